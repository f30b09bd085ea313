use modlab_core::functor::{comparison_map, double_dual_eval, r_extension, star_double_dual_eval};
use modlab_core::linalg::{smith_normal_form, IntMatrix};
use modlab_core::module::{hom_module, tensor_over_r, Side};
use modlab_core::ring::{Algebra, Ring};

use crate::{input, CliError, ComputeCmd};

fn diag(d: &IntMatrix) -> String {
    let k = d.rows().min(d.cols());
    let entries: Vec<String> = (0..k).map(|i| d[(i, i)].to_string()).collect();
    format!("diag({})", entries.join(","))
}

fn algebra(ring: &Ring, spec: &str) -> Result<Algebra, CliError> {
    if spec == "R" {
        return Ok(Algebra::base(ring.clone()));
    }
    // R/<v;…>: quotient by the two-sided ideal the vectors generate
    let inner = spec
        .strip_prefix("R/<")
        .and_then(|s| s.strip_suffix('>'))
        .ok_or_else(|| CliError::input("--algebra: expected R or R/<v;…>"))?;
    let gens = inner
        .split(';')
        .map(|p| p.split(',').map(|t| t.trim().parse().map_err(|_| CliError::input(format!("--algebra: bad integer {:?}", t)))).collect())
        .collect::<Result<Vec<Vec<_>>, _>>()?;
    let (_, proj) = ring.quotient_ring(&gens).map_err(|e| CliError::input(format!("--algebra: {}", e)))?;
    Ok(Algebra::new(spec, proj))
}

pub fn run(cmd: ComputeCmd) -> Result<String, CliError> {
    let mut out = String::new();
    match cmd {
        ComputeCmd::Snf { matrix } => {
            let a = input::matrix("--matrix", &matrix)?;
            let (u, d, v) = smith_normal_form(&a);
            out.push_str(&format!("D = {}\nU = {}\nV = {}\n", diag(&d), u, v));
        }
        ComputeCmd::Hom { ring, m, n, side } => {
            let r = input::ring(&ring)?;
            let side = side.into();
            let m = input::module("--m", &m, &r, side)?;
            let n = input::module("--n", &n, &r, side)?;
            let hom = hom_module(&m, &n).map_err(CliError::compute)?;
            out.push_str(&format!("{}\n", hom.group()));
            for (i, f) in hom.generators().iter().enumerate() {
                out.push_str(&format!("f{} = {}\n", i, f.map().matrix()));
            }
        }
        ComputeCmd::Tensor { ring, n, m } => {
            let r = input::ring(&ring)?;
            let n = input::module("--n", &n, &r, Side::Right)?;
            let m = input::module("--m", &m, &r, Side::Left)?;
            let t = tensor_over_r(&n, &m).map_err(CliError::compute)?;
            out.push_str(&format!("{}\n", t.group()));
        }
        ComputeCmd::Rker { ring, n, m } => {
            let r = input::ring(&ring)?;
            let n = input::module("--n", &n, &r, Side::Right)?;
            let m = input::module("--m", &m, &r, Side::Left)?;
            let ext = r_extension(&n, &m).map_err(CliError::compute)?;
            let c = comparison_map(&ext).map_err(CliError::compute)?;
            out.push_str(&format!(
                "{} (comparison map: {})\n",
                ext.kernel(),
                if c.is_isomorphism { "isomorphism" } else { "not an isomorphism" }
            ));
        }
        ComputeCmd::Dualeval { ring, m, algebra: s } => {
            let r = input::ring(&ring)?;
            let m = input::module("--m", &m, &r, Side::Left)?;
            let s = algebra(&r, &s)?;
            let dd = double_dual_eval(&m, &s).map_err(CliError::compute)?;
            let st = star_double_dual_eval(&m, &s).map_err(CliError::compute)?;
            let word = |iso: bool| if iso { "isomorphism" } else { "not an isomorphism" };
            out.push_str(&format!("S ⊗_R M = {}\n", dd.extension.tensor().group()));
            out.push_str(&format!("M^vv(S) = {} (canonical map: {})\n", dd.group(), word(dd.canonical.is_isomorphism)));
            out.push_str(&format!("M^**(S) = {} (canonical map: {})\n", st.group(), word(st.canonical.is_isomorphism)));
        }
    }
    Ok(out)
}
