use std::io::Write;

use hallint_core::device::{complement_device, params_from_resistances, Resistances3C, SnrModel};
use hallint_core::{ParamPair, QuadOptions};
use serde_json::{Map, Number, Value};

use crate::args::{DeviceArgs, DeviceFormat};
use crate::error::CliError;
use crate::report::{sci10, sci17};

/// Which description of the device was given on the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeviceInput {
    Resistances(Resistances3C),
    Parameters(ParamPair),
    Moduli { p: f64, f: f64 },
}

impl DeviceInput {
    pub fn from_args(args: &DeviceArgs) -> Result<Self, CliError> {
        let resist = [args.re, args.rd, args.rsh];
        let params = [args.alpha, args.beta];
        let moduli = [args.p, args.f];
        let given = |xs: &[Option<f64>]| xs.iter().filter(|x| x.is_some()).count();
        let complete = |xs: &[Option<f64>]| given(xs) == xs.len();
        let groups = [given(&resist) > 0, given(&params) > 0, given(&moduli) > 0];
        if groups.iter().filter(|&&g| g).count() != 1 {
            return Err(CliError::usage(
                "give exactly one of --re/--rd/--rsh, --alpha/--beta or --p/--f",
            ));
        }
        if given(&resist) > 0 {
            if !complete(&resist) {
                return Err(CliError::usage("--re, --rd and --rsh must be given together"));
            }
            let r = Resistances3C::new(resist[0].unwrap(), resist[1].unwrap(), resist[2].unwrap())?;
            return Ok(DeviceInput::Resistances(r));
        }
        if given(&params) > 0 {
            if !complete(&params) {
                return Err(CliError::usage("--alpha and --beta must be given together"));
            }
            return Ok(DeviceInput::Parameters(ParamPair::new(params[0].unwrap(), params[1].unwrap())?));
        }
        if !complete(&moduli) {
            return Err(CliError::usage("--p and --f must be given together"));
        }
        Ok(DeviceInput::Moduli {
            p: moduli[0].unwrap(),
            f: moduli[1].unwrap(),
        })
    }
}

/// Named output fields, in print order.
pub fn compute(input: DeviceInput, model: SnrModel, opts: QuadOptions) -> Result<Vec<(&'static str, f64)>, CliError> {
    let mut fields = Vec::new();
    let pair = match input {
        DeviceInput::Moduli { p, f } => {
            let m = model.metrics_4c(p, f, opts)?;
            fields.extend([
                ("p", p),
                ("f", f),
                ("geometry_factor", m.geometry_factor.value),
                ("snr", m.snr_proportional.value),
            ]);
            return Ok(fields);
        }
        DeviceInput::Resistances(r) => {
            fields.extend([("r_e", r.r_e), ("r_d", r.r_d), ("r_sh", r.r_sh)]);
            params_from_resistances(r)?
        }
        DeviceInput::Parameters(pair) => pair,
    };
    let metrics = model.metrics_3c(pair, opts)?;
    let comp = complement_device(pair);
    let comp_snr = model.snr_3c(comp, opts)?.value;
    let snr = metrics.snr_proportional.value;
    fields.extend([
        ("alpha", pair.alpha().value()),
        ("beta", pair.beta().value()),
        ("geometry_factor", metrics.geometry_factor.value),
        ("snr", snr),
        ("complement_alpha", comp.alpha().value()),
        ("complement_beta", comp.beta().value()),
        ("complement_snr", comp_snr),
        ("snr_difference", snr - comp_snr),
    ]);
    Ok(fields)
}

pub fn write<W: Write>(fields: &[(&str, f64)], format: DeviceFormat, mut out: W) -> Result<(), CliError> {
    match format {
        DeviceFormat::Table => {
            for (k, v) in fields {
                writeln!(out, "{k:<18}{:>18}", sci10(*v))?;
            }
        }
        DeviceFormat::Json => {
            let mut map = Map::new();
            for (k, v) in fields {
                let n: Number = sci17(*v)
                    .parse()
                    .map_err(|e: serde_json::Error| CliError::usage(e.to_string()))?;
                map.insert((*k).to_string(), Value::Number(n));
            }
            serde_json::to_writer_pretty(&mut out, &Value::Object(map))?;
            writeln!(out)?;
        }
    }
    Ok(())
}
