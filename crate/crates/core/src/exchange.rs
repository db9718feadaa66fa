//! Sparse-triplet interchange: `{"dim", "generator", "entries": [[row, col, "value"], …]}`
//! with values as full-precision decimal strings.

use serde::{Deserialize, Serialize};

use crate::basis::{enumerate, BasisKind, IrrepLabel, StateLabel};
use crate::error::{Error, Result};
use crate::half::Half;
use crate::qnum::QParam;
use crate::repbuild::Representation;
use crate::scalar::Scalar;
use crate::sparse::GeneratorMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripletMatrix {
    pub dim: usize,
    pub generator: String,
    pub entries: Vec<(usize, usize, String)>,
}

impl TripletMatrix {
    pub fn from_matrix<S: Scalar>(generator: &str, m: &GeneratorMatrix<S>) -> Self {
        TripletMatrix {
            dim: m.dim(),
            generator: generator.to_string(),
            entries: m.entries().map(|(r, c, v)| (r, c, v.to_exact_string())).collect(),
        }
    }

    pub fn to_matrix<S: Scalar>(&self) -> Result<GeneratorMatrix<S>> {
        let triplets = self
            .entries
            .iter()
            .map(|(r, c, v)| Ok((*r, *c, S::parse_decimal(v)?)))
            .collect::<Result<Vec<_>>>()?;
        GeneratorMatrix::from_triplets(self.dim, triplets)
    }
}

/// Per-state Cartan eigenvalues as stored in an export.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanExport {
    pub h1: Vec<Half>,
    pub h2: Vec<Half>,
}

/// Everything needed to rebuild a representation without re-running a builder.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepresentationExport {
    pub irrep: IrrepLabel,
    pub basis_kind: BasisKind,
    pub q: String,
    pub precision: String,
    pub states: Vec<StateLabel>,
    pub cartan: CartanExport,
    pub generators: Vec<TripletMatrix>,
}

const SIMPLE: [&str; 4] = ["e1", "e2", "f1", "f2"];

impl RepresentationExport {
    pub fn from_representation<S: Scalar>(rep: &Representation<S>) -> Self {
        RepresentationExport {
            irrep: rep.irrep(),
            basis_kind: rep.kind(),
            q: rep.q().q().to_exact_string(),
            precision: S::precision_tag(),
            states: rep.basis().states().to_vec(),
            cartan: CartanExport { h1: rep.cartan().h1(), h2: rep.cartan().h2() },
            generators: rep
                .named_generators()
                .into_iter()
                .map(|(name, m)| TripletMatrix::from_matrix(name, m))
                .collect(),
        }
    }

    fn generator(&self, name: &str) -> Result<&TripletMatrix> {
        self.generators
            .iter()
            .find(|g| g.generator == name)
            .ok_or_else(|| Error::Parse(format!("export has no `{name}` matrix")))
    }

    /// Rebuilds the representation. The basis is re-enumerated and must match
    /// the stored states; derived generators are recomputed and, when present
    /// in the file, must agree exactly with the stored ones.
    pub fn to_representation<S: Scalar>(&self) -> Result<Representation<S>> {
        if self.precision != S::precision_tag() {
            return Err(Error::InvalidParameter(format!(
                "export was written at precision `{}`, importing at `{}`",
                self.precision,
                S::precision_tag()
            )));
        }
        let basis = enumerate(self.irrep, self.basis_kind)?;
        if basis.states() != self.states.as_slice() {
            return Err(Error::Parse("stored states do not match the enumerated basis".into()));
        }
        let q = QParam::new(S::parse_decimal(&self.q)?)?;
        let mut simple = Vec::with_capacity(4);
        for name in SIMPLE {
            let t = self.generator(name)?;
            if t.dim != basis.len() {
                return Err(Error::DimensionMismatch(t.dim, basis.len()));
            }
            simple.push(t.to_matrix::<S>()?);
        }
        let [e1, e2, f1, f2]: [GeneratorMatrix<S>; 4] = simple.try_into().expect("four matrices");
        let rep = Representation::from_generators(basis, q, e1, e2, f1, f2)?;
        if rep.cartan().h1() != self.cartan.h1 || rep.cartan().h2() != self.cartan.h2 {
            return Err(Error::Parse("stored Cartan eigenvalues do not match the basis".into()));
        }
        for (name, m) in rep.named_generators() {
            if SIMPLE.contains(&name) {
                continue;
            }
            if let Some(stored) = self.generators.iter().find(|g| g.generator == name) {
                if *stored != TripletMatrix::from_matrix(name, m) {
                    return Err(Error::Parse(format!("stored `{name}` differs from the recomputed one")));
                }
            }
        }
        Ok(rep)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repbuild::{build_basis1_equal, build_basis2_classical};
    use crate::scalar::HighPrecision;
    use crate::verify::verify;

    #[test]
    fn triplet_schema() {
        let m = GeneratorMatrix::from_triplets(2, vec![(0, 1, 0.1f64)]).unwrap();
        let json = serde_json::to_string(&TripletMatrix::from_matrix("e1", &m)).unwrap();
        assert_eq!(json, r#"{"dim":2,"generator":"e1","entries":[[0,1,"0.1"]]}"#);
    }

    #[test]
    fn double_round_trip_reproduces_report() {
        let rep = build_basis1_equal(Half::from_twice(3), &QParam::new(1.5f64).unwrap()).unwrap();
        let text = RepresentationExport::from_representation(&rep).to_json().unwrap();
        let back: Representation<f64> = RepresentationExport::from_json(&text).unwrap().to_representation().unwrap();
        assert_eq!(back.e2(), rep.e2());
        let a = verify(&rep, None).unwrap().to_json().unwrap();
        let b = verify(&back, None).unwrap().to_json().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn high_precision_round_trip() {
        let q = QParam::new(HighPrecision::parse_decimal("1.1").unwrap()).unwrap();
        let rep = build_basis1_equal(Half::ONE, &q).unwrap();
        let export = RepresentationExport::from_representation(&rep);
        let back: Representation<HighPrecision> = export.to_representation().unwrap();
        assert_eq!(back.e1(), rep.e1());
        assert!(export.to_representation::<f64>().is_err());
    }

    #[test]
    fn tampering_is_detected() {
        let rep = build_basis2_classical::<f64>(IrrepLabel::new(Half::int(2), Half::ZERO).unwrap()).unwrap();
        let mut export = RepresentationExport::from_representation(&rep);
        export.states.swap(0, 1);
        assert!(export.to_representation::<f64>().is_err());

        let mut export = RepresentationExport::from_representation(&rep);
        let e1 = export.generators.iter_mut().find(|g| g.generator == "e1").unwrap();
        e1.entries[0].2 = "0.5".into();
        assert!(export.to_representation::<f64>().is_err());

        let mut export = RepresentationExport::from_representation(&rep);
        export.generators.retain(|g| g.generator != "f2");
        assert!(export.to_representation::<f64>().is_err());
    }
}
