//! Constructors for standard fans: projective spaces, Hirzebruch surfaces,
//! products, and smooth star subdivisions; plus a seeded random generator
//! of smooth complete fans used for property testing.

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::matrix::{add_vec, Int};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The fan of P^n: rays X1..Xn are the standard basis, X{n+1} their
/// negative sum; maximal cones are all n-element ray subsets.
pub fn projective_space(n: usize) -> Fan {
    assert!(n >= 1, "projective space needs rank >= 1");
    let mut rays: Vec<(String, Vec<Int>)> = Vec::new();
    for i in 0..n {
        let mut v = vec![Int::from(0); n];
        v[i] = Int::from(1);
        rays.push((format!("X{}", i + 1), v));
    }
    rays.push((format!("X{}", n + 1), vec![Int::from(-1); n]));
    let names: Vec<String> = rays.iter().map(|(s, _)| s.clone()).collect();
    let cones: Vec<Vec<String>> = (0..=n)
        .map(|skip| {
            names
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, s)| s.clone())
                .collect()
        })
        .collect();
    Fan::new(n, rays, cones, None).expect("projective fan is well-formed")
}

/// The fan of the Hirzebruch surface F_a on rays (1,0), (0,1), (-1,a),
/// (0,-1); F_0 is P^1 x P^1.
pub fn hirzebruch(a: i64) -> Fan {
    assert!(a >= 0, "Hirzebruch parameter must be nonnegative");
    let rays = vec![
        ("H1".to_string(), vec![Int::from(1), Int::from(0)]),
        ("H2".to_string(), vec![Int::from(0), Int::from(1)]),
        ("H3".to_string(), vec![Int::from(-1), Int::from(a)]),
        ("H4".to_string(), vec![Int::from(0), Int::from(-1)]),
    ];
    let cones = vec![
        vec!["H1".to_string(), "H2".to_string()],
        vec!["H2".to_string(), "H3".to_string()],
        vec!["H3".to_string(), "H4".to_string()],
        vec!["H4".to_string(), "H1".to_string()],
    ];
    Fan::new(2, rays, cones, None).expect("Hirzebruch fan is well-formed")
}

/// Product fan: rays of `a` embedded in the first factor, rays of `b` in
/// the second; maximal cones are pairwise unions. Ray names are prefixed
/// "a_" and "b_". Both factors must have full-space support.
pub fn product(a: &Fan, b: &Fan) -> Result<Fan> {
    if a.support().is_some() || b.support().is_some() {
        return Err(Error::BadArgument(
            "product of fans requires full-space support on both factors".into(),
        ));
    }
    let ra = a.ambient_rank();
    let rb = b.ambient_rank();
    let mut rays: Vec<(String, Vec<Int>)> = Vec::new();
    for (name, v) in a.rays() {
        let mut w = v.clone();
        w.extend(vec![Int::from(0); rb]);
        rays.push((format!("a_{name}"), w));
    }
    for (name, v) in b.rays() {
        let mut w = vec![Int::from(0); ra];
        w.extend(v.iter().cloned());
        rays.push((format!("b_{name}"), w));
    }
    let mut cones: Vec<Vec<String>> = Vec::new();
    for ca in a.max_cones() {
        for cb in b.max_cones() {
            let mut names: Vec<String> = ca.iter().map(|n| format!("a_{n}")).collect();
            names.extend(cb.iter().map(|n| format!("b_{n}")));
            cones.push(names);
        }
    }
    Fan::new(ra + rb, rays, cones, None)
}

/// Smooth star subdivision of a smooth fan at the sum of a subset of the
/// rays of one of its cones.
///
/// The new ray v is the sum of the chosen rays S (|S| >= 2); every maximal
/// cone containing S is replaced by the cones (rays minus one element of S)
/// plus v. Smoothness and completeness are preserved.
pub fn star_subdivide(fan: &Fan, cone_rays: &[String], new_name: &str) -> Result<Fan> {
    if cone_rays.len() < 2 {
        return Err(Error::BadArgument(
            "star subdivision needs at least two rays".into(),
        ));
    }
    let mut v = vec![Int::from(0); fan.ambient_rank()];
    for name in cone_rays {
        v = add_vec(&v, fan.ray_vector(name)?);
    }
    if fan.rays().values().any(|r| *r == v) {
        return Err(Error::BadArgument(
            "subdivision ray already present in the fan".into(),
        ));
    }
    if fan.rays().contains_key(new_name) {
        return Err(Error::DuplicateRayName(new_name.to_string()));
    }
    let subset: Vec<&String> = cone_rays.iter().collect();
    let mut rays: Vec<(String, Vec<Int>)> = fan
        .rays()
        .iter()
        .map(|(n, r)| (n.clone(), r.clone()))
        .collect();
    rays.push((new_name.to_string(), v));
    let mut cones: Vec<Vec<String>> = Vec::new();
    let mut touched = false;
    for cone in fan.max_cones() {
        if subset.iter().all(|s| cone.contains(s)) {
            touched = true;
            for skip in &subset {
                let mut names: Vec<String> = cone
                    .iter()
                    .filter(|n| n != skip)
                    .cloned()
                    .collect();
                names.push(new_name.to_string());
                cones.push(names);
            }
        } else {
            cones.push(cone.clone());
        }
    }
    if !touched {
        return Err(Error::BadArgument(
            "no maximal cone contains the chosen rays".into(),
        ));
    }
    Fan::new(
        fan.ambient_rank(),
        rays,
        cones,
        fan.support()
            .map(|s| s.inequalities().to_vec()),
    )
}

/// Deterministic seeded generator of smooth complete fans of rank <= 4:
/// a random base (projective space or a product of smaller ones) followed
/// by `subdivisions` random smooth star subdivisions.
pub fn random_smooth_complete_fan(seed: u64, rank: usize, subdivisions: usize) -> Fan {
    assert!((1..=4).contains(&rank), "rank must be between 1 and 4");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fan = random_base(&mut rng, rank);
    let mut next_id = 0usize;
    for _ in 0..subdivisions {
        // Choose a maximal cone and a subset of >= 2 of its rays.
        let cones = fan.max_cones().to_vec();
        let cone = &cones[rng.gen_range(0..cones.len())];
        if cone.len() < 2 {
            continue;
        }
        let take = rng.gen_range(2..=cone.len());
        // Deterministic subset: rotate by a random offset, take a prefix.
        let offset = rng.gen_range(0..cone.len());
        let chosen: Vec<String> = (0..take)
            .map(|i| cone[(offset + i) % cone.len()].clone())
            .collect();
        let name = loop {
            let cand = format!("r{next_id}");
            next_id += 1;
            if !fan.rays().contains_key(&cand) {
                break cand;
            }
        };
        match star_subdivide(&fan, &chosen, &name) {
            Ok(next) => fan = next,
            // The sum may coincide with an existing ray; skip that step.
            Err(_) => continue,
        }
    }
    fan
}

fn random_base(rng: &mut ChaCha8Rng, rank: usize) -> Fan {
    match rank {
        1 => projective_space(1),
        2 => match rng.gen_range(0..3) {
            0 => projective_space(2),
            1 => hirzebruch(rng.gen_range(0..4)),
            _ => product(&projective_space(1), &projective_space(1))
                .expect("product of projective lines"),
        },
        3 => match rng.gen_range(0..3) {
            0 => projective_space(3),
            1 => product(&projective_space(1), &projective_space(2))
                .expect("product of projective spaces"),
            _ => product(&projective_space(1), &hirzebruch(rng.gen_range(0..3)))
                .expect("product with a Hirzebruch surface"),
        },
        _ => match rng.gen_range(0..4) {
            0 => projective_space(4),
            1 => product(&projective_space(2), &projective_space(2))
                .expect("product of projective planes"),
            2 => product(&projective_space(1), &projective_space(3))
                .expect("product of projective spaces"),
            _ => product(
                &hirzebruch(rng.gen_range(0..3)),
                &projective_space(1),
            )
            .expect("product with a Hirzebruch surface"),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn projective_spaces_are_smooth_and_complete() {
        for n in 1..=4 {
            let f = projective_space(n);
            assert!(f.validate().is_valid(), "P^{n} invalid");
            assert!(f.is_smooth());
            assert!(f.is_complete().unwrap());
            assert_eq!(f.rays().len(), n + 1);
            assert_eq!(f.max_cones().len(), n + 1);
        }
    }

    #[test]
    fn hirzebruch_fans() {
        for a in 0..=3 {
            let f = hirzebruch(a);
            assert!(f.validate().is_valid());
            assert!(f.is_smooth());
            assert!(f.is_complete().unwrap());
        }
    }

    #[test]
    fn products() {
        let f = product(&projective_space(1), &projective_space(1)).unwrap();
        assert!(f.validate().is_valid());
        assert!(f.is_smooth());
        assert!(f.is_complete().unwrap());
        assert_eq!(f.rays().len(), 4);
        assert_eq!(f.max_cones().len(), 4);
        let g = product(&projective_space(2), &projective_space(1)).unwrap();
        assert_eq!(g.ambient_rank(), 3);
        assert!(g.is_complete().unwrap());
    }

    #[test]
    fn star_subdivision_of_p2() {
        // Subdividing the X1X2 cone at (1,1) gives the blow-up of P^2,
        // which is F_1 up to coordinates.
        let f = projective_space(2);
        let g = star_subdivide(
            &f,
            &["X1".to_string(), "X2".to_string()],
            "E",
        )
        .unwrap();
        assert!(g.validate().is_valid());
        assert!(g.is_smooth());
        assert!(g.is_complete().unwrap());
        assert_eq!(g.rays().len(), 4);
        assert_eq!(g.max_cones().len(), 4);
        assert_eq!(g.ray_vector("E").unwrap(), &vec![Int::from(1), Int::from(1)]);
    }

    #[test]
    fn subdivision_rejects_bad_input() {
        let f = projective_space(2);
        let err = star_subdivide(&f, &["X1".to_string()], "E");
        assert!(err.is_err());
        let err = star_subdivide(
            &f,
            &["X1".to_string(), "X2".to_string()],
            "X3",
        );
        assert!(err.is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        /// Property: every generated fan is valid, smooth, and complete.
        #[test]
        fn prop_random_fans_smooth_complete(seed in 0u64..1000, rank in 1usize..=3, subs in 0usize..=3) {
            let f = random_smooth_complete_fan(seed, rank, subs);
            prop_assert!(f.validate().is_valid());
            prop_assert!(f.is_smooth());
            prop_assert!(f.is_complete().unwrap());
        }

        /// Property: the generator is deterministic in the seed.
        #[test]
        fn prop_generator_deterministic(seed in 0u64..200) {
            let a = random_smooth_complete_fan(seed, 2, 2);
            let b = random_smooth_complete_fan(seed, 2, 2);
            prop_assert_eq!(a, b);
        }
    }
}
