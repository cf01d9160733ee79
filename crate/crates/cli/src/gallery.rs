//! The shipped fixture gallery.

use std::path::Path;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sesq_core::darrow::q_of_form;
use sesq_core::fixtures::{cyclic_group_ring, gram_form, matrix_row_module, scalar_form};
use sesq_core::form::{random_form, BilinearSpace};
use sesq_core::io::{document_to_string, to_canonical, AlgebraJson, Scalar};
use sesq_core::{Document, Field, FieldDescriptor, Group, InvAlgebra, RightModule, SesqForm, SesqSystem};

/// Three-dimensional table with `(a·a)·a ≠ a·(a·a)`.
fn bad_algebra() -> AlgebraJson {
    let s = |xs: [i64; 3]| xs.iter().map(|&x| Scalar::Int(x)).collect::<Vec<_>>();
    let (e, a, b, z) = (s([1, 0, 0]), s([0, 1, 0]), s([0, 0, 1]), s([0, 0, 0]));
    AlgebraJson {
        field: FieldDescriptor::Prime { p: 3 },
        dim: 3,
        basis: vec!["e".into(), "a".into(), "b".into()],
        unit: e.clone(),
        structure: vec![
            vec![e.clone(), a.clone(), b.clone()],
            vec![a, b.clone(), z.clone()],
            vec![b, e, z],
        ],
        involution: vec![s([1, 0, 0]), s([0, 1, 0]), s([0, 0, 1])],
        group: None,
    }
}

fn documents() -> Vec<(&'static str, Document)> {
    let f2 = Field::prime(2).unwrap();
    let f3 = Field::prime(3).unwrap();
    let q = Field::rational();
    let c2 = cyclic_group_ring(&f3, 2);
    let c3 = cyclic_group_ring(&f2, 3);
    let reg_c2 = RightModule::regular(c2.clone());
    let m2 = Arc::new(InvAlgebra::matrix_algebra(&f3, 2).unwrap());
    let row = matrix_row_module(&m2, 2).unwrap();
    let bilinear = BilinearSpace::new(&reg_c2)
        .unwrap()
        .random(&mut ChaCha8Rng::seed_from_u64(11));
    let f3_sum = gram_form(&f3, &[&[1, 0], &[0, 2]]);
    let system = SesqSystem::from_forms(vec![
        gram_form(&f3, &[&[1, 0], &[0, 1]]),
        gram_form(&f3, &[&[0, 1], &[2, 0]]),
    ])
    .unwrap();
    let form = |s: SesqForm| Document::Form(s);
    vec![
        ("f2_diag", form(gram_form(&f2, &[&[1, 0], &[0, 1]]))),
        ("f2_antidiag", form(gram_form(&f2, &[&[0, 1], &[1, 0]]))),
        ("f3_rank1", form(scalar_form(&f3, 1))),
        ("f3_rank1_two", form(scalar_form(&f3, 2))),
        ("f3_sum", form(f3_sum.clone())),
        ("f3_degenerate", form(gram_form(&f3, &[&[1, 0], &[0, 0]]))),
        ("f3_system", Document::System(system)),
        ("f3_object", Document::Object(q_of_form(&f3_sum.into()).unwrap().object)),
        ("f9_field", Document::Field(Field::extension_of_degree(3, 2).unwrap())),
        ("c2_group", Document::Group(Group::cyclic(2))),
        ("c3_group", Document::Group(Group::cyclic(3))),
        ("f3c2_algebra", Document::Algebra((*c2).clone())),
        ("f3c2_regular", Document::Module(reg_c2.clone())),
        ("f3c2_form", form(random_form(&reg_c2, 1, true, 1000).unwrap())),
        ("f3c2_bilinear", Document::Bilinear(bilinear)),
        ("f2c3_regular", Document::Module(RightModule::regular(c3))),
        ("m2f3_row", Document::Module(row.clone())),
        ("m2f3_row_form", form(random_form(&row, 2, true, 1000).unwrap())),
        ("q_one", form(scalar_form(&q, 1))),
        ("q_four", form(scalar_form(&q, 4))),
    ]
}

/// Writes every fixture as `<name>.json` and returns the file names.
pub fn write(dir: &Path) -> anyhow::Result<Vec<String>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for (name, doc) in documents() {
        let file = format!("{name}.json");
        std::fs::write(dir.join(&file), document_to_string(&doc))?;
        written.push(file);
    }
    std::fs::write(dir.join("bad_algebra.json"), to_canonical(&bad_algebra()))?;
    written.push("bad_algebra.json".into());
    Ok(written)
}
