//! Named verification suites over the built-in group roster.
//!
//! Each suite re-checks one slice of the library's mathematical claims by
//! brute force and reports one line per check.  The suites back both the
//! `verify` subcommand and the integration tests, so their logic lives here
//! rather than in either front end.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::catalog_groups;
use crate::cayley::CayleyGraph;
use crate::classify::{
    complete_cca_verdict, inversion_map, predict_stabilizer, unit_fixing_map, UnitSet,
};
use crate::colour_aut::{
    enumerate_stabilizer, find_non_affine_graph_automorphism, full_automorphism_group,
    involution_subgroup, is_colour_permuting, is_colour_preserving, local_permutation,
    make_colour_preserving_conjugate, star_set, AutomorphismSet, InvolutionSubgroup, Mode,
};
use crate::decompose::{decompose_colour_permuting, verify_decomposition};
use crate::error::Result;
use crate::group::{FiniteGroup, GroupMap};
use crate::structure::{
    all_subgroups, decompose_hamiltonian_2group, enumerate_automorphisms, is_affine,
    is_group_automorphism, subgroup_generated,
};

/// Seed used by the suites when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0xCCA5_EED0;

/// Default order bound for the exhaustive connection-set scans.
pub const DEFAULT_SCAN_ORDER: usize = 16;

/// One named assertion with its outcome.
#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// A suite's worth of check lines.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckLine>,
}

impl SuiteReport {
    fn new(suite: &str) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            checks: Vec::new(),
        }
    }

    /// Record a check: it passes when `failures` is empty, in which case
    /// `ok_detail` is shown; otherwise the first few failures are.
    fn record(&mut self, name: &str, failures: Vec<String>, ok_detail: String) {
        let passed = failures.is_empty();
        let detail = if passed {
            ok_detail
        } else {
            let shown: Vec<&str> = failures.iter().take(3).map(String::as_str).collect();
            let suffix = if failures.len() > 3 {
                format!(" (+{} more)", failures.len() - 3)
            } else {
                String::new()
            };
            format!("{}{}", shown.join("; "), suffix)
        };
        self.checks.push(CheckLine {
            name: name.to_string(),
            passed,
            detail,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Human-readable report, one line per check plus a summary.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed { "[PASS]" } else { "[FAIL]" };
            out.push_str(&format!("{tag} {}/{} — {}\n", self.suite, c.name, c.detail));
        }
        let good = self.checks.iter().filter(|c| c.passed).count();
        out.push_str(&format!(
            "suite {}: {}/{} checks passed\n",
            self.suite,
            good,
            self.checks.len()
        ));
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "suite": self.suite,
            "passed": self.passed(),
            "checks": self.checks,
        })
    }
}

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

fn roster(max_order: usize, only: Option<&str>) -> Result<Vec<FiniteGroup>> {
    let groups = catalog_groups(max_order)?;
    Ok(match only {
        None => groups,
        Some(name) => groups.into_iter().filter(|g| g.name() == name).collect(),
    })
}

/// Every non-empty inverse-closed connection set whose graph is connected,
/// enumerated as unions of colour classes of the complete graph.
fn connected_inverse_closed_sets(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let complete = CayleyGraph::complete(g);
    let classes = complete.colour_classes();
    let k = classes.len();
    assert!(k < 25, "scan is exponential in the class count");
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << k) {
        let mut s = Vec::new();
        for (ci, class) in classes.iter().enumerate() {
            if mask & (1 << ci) != 0 {
                s.extend(class.members());
            }
        }
        s.sort_unstable();
        if subgroup_generated(g, &s).len() == g.order() {
            out.push(s);
        }
    }
    out
}

/// Up to `want` distinct random connected, non-complete connection sets.
fn random_connected_sets(
    g: &FiniteGroup,
    want: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<usize>> {
    let complete = CayleyGraph::complete(g);
    let classes = complete.colour_classes();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for _ in 0..want * 20 {
        if out.len() == want {
            break;
        }
        let mut s = Vec::new();
        for class in classes {
            if rng.gen_bool(0.5) {
                s.extend(class.members());
            }
        }
        s.sort_unstable();
        if s.is_empty()
            || s.len() == g.order() - 1
            || subgroup_generated(g, &s).len() != g.order()
            || !seen.insert(s.clone())
        {
            continue;
        }
        out.push(s);
    }
    out
}

/// A random bijection of the vertices fixing the identity.
fn random_one_fixing_map(n: usize, rng: &mut ChaCha8Rng) -> GroupMap {
    let mut rest: Vec<usize> = (1..n).collect();
    for i in (1..rest.len()).rev() {
        rest.swap(i, rng.gen_range(0..=i));
    }
    let mut image = Vec::with_capacity(n);
    image.push(0);
    image.extend(rest);
    GroupMap::from_images(image).expect("shuffled permutation")
}

/// Run `visit` on every permutation of `items` (Heap's algorithm); return
/// false from `visit` to stop early.
fn for_each_permutation(items: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn heap(k: usize, items: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if k <= 1 {
            return visit(items);
        }
        for i in 0..k {
            if !heap(k - 1, items, visit) {
                return false;
            }
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
        true
    }
    heap(items.len(), items, visit)
}

/// All identity-fixing maps of the given kind, found by filtering every
/// bijection — the factorial oracle the fast search is checked against.
fn stabilizer_by_exhaustion(x: &CayleyGraph, mode: Mode) -> Vec<GroupMap> {
    let g = x.group();
    let mut rest: Vec<usize> = g.elements().filter(|&v| v != g.identity()).collect();
    let slots: Vec<usize> = g.elements().filter(|&v| v != g.identity()).collect();
    let mut out = Vec::new();
    for_each_permutation(&mut rest, &mut |perm| {
        let mut image = vec![0usize; g.order()];
        for (&src, &dst) in slots.iter().zip(perm) {
            image[src] = dst;
        }
        let m = GroupMap::from_images_unchecked(image);
        let keep = match mode {
            Mode::ColourPreserving => is_colour_preserving(x, &m),
            Mode::ColourPermuting => is_colour_permuting(x, &m).is_some(),
            Mode::AllGraph => g.elements().all(|v| {
                g.elements()
                    .all(|w| x.has_edge(v, w) == x.has_edge(m.apply(v), m.apply(w)))
            }),
        };
        if keep {
            out.push(m);
        }
        true
    });
    out.sort_unstable();
    out
}

/// The colour-class condition re-derived from per-vertex local
/// permutations, used to cross-check `is_colour_permuting`.
fn colour_permuting_via_locals(x: &CayleyGraph, m: &GroupMap) -> bool {
    let classes = x.colour_classes().len();
    let mut assign = vec![usize::MAX; classes];
    for v in x.group().elements() {
        let lp = match local_permutation(x, m, v) {
            Ok(lp) => lp,
            Err(_) => return false,
        };
        for (&s, &t) in x.connection().iter().zip(&lp.images) {
            let c = x.class_of(s).expect("s in set");
            let c2 = x.class_of(t).expect("checked by local_permutation");
            if assign[c] == usize::MAX {
                assign[c] = c2;
            } else if assign[c] != c2 {
                return false;
            }
        }
    }
    let mut seen = vec![false; classes];
    assign.iter().all(|&c2| {
        c2 != usize::MAX && !std::mem::replace(&mut seen[c2], true)
    })
}

/// Is `m` expressible as (automorphism from `auts`) composed with a left
/// translation?  Independent route to the affine verdict.
fn affine_by_pair_scan(g: &FiniteGroup, auts: &[GroupMap], m: &GroupMap) -> bool {
    for alpha in auts {
        for t in g.elements() {
            if g.elements().all(|x| m.apply(x) == alpha.apply(g.mul(t, x))) {
                return true;
            }
        }
    }
    false
}

/// Everything the lemma checks need to know about one graph.
struct GraphData {
    x: CayleyGraph,
    /// Identity-fixing colour-preserving maps.
    preserving: AutomorphismSet,
    /// Identity-fixing colour-permuting maps.
    permuting: AutomorphismSet,
    /// Every identity-fixing colour-permuting map is a group automorphism.
    strongly_cca: bool,
    star: Vec<usize>,
    involutions: InvolutionSubgroup,
}

impl GraphData {
    fn build(x: CayleyGraph) -> Result<GraphData> {
        let preserving = enumerate_stabilizer(&x, Mode::ColourPreserving)?;
        let permuting = enumerate_stabilizer(&x, Mode::ColourPermuting)?;
        let strongly_cca = permuting
            .maps
            .iter()
            .all(|m| is_group_automorphism(x.group(), m));
        let star = star_set(&x)?;
        let involutions = involution_subgroup(&x);
        Ok(GraphData {
            x,
            preserving,
            permuting,
            strongly_cca,
            star,
            involutions,
        })
    }

    fn label(&self) -> String {
        format!("{} S={:?}", self.x.group().name(), self.x.connection())
    }
}

// ---------------------------------------------------------------------------
// Suite: lemmas
// ---------------------------------------------------------------------------

/// Behavioural facts about colour-preserving and colour-permuting maps,
/// checked over every roster complete graph plus random connected proper
/// graphs for the smaller groups.
pub fn suite_lemmas(max_order: usize, seed: u64, only: Option<&str>) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("lemmas");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let groups = roster(max_order, only)?;
    let mut data: Vec<GraphData> = Vec::new();
    for g in &groups {
        data.push(GraphData::build(CayleyGraph::complete(g))?);
        if g.order() <= DEFAULT_SCAN_ORDER {
            for s in random_connected_sets(g, 20, &mut rng) {
                data.push(GraphData::build(CayleyGraph::new(g, &s)?)?);
            }
        }
    }
    let graphs = data.len();
    let total_maps: usize = data.iter().map(|d| d.permuting.len()).sum();

    // translations are colour-preserving automorphisms
    {
        let mut bad = Vec::new();
        for d in &data {
            let g = d.x.group();
            for t in g.elements() {
                if !is_colour_preserving(&d.x, &GroupMap::translation(g, t)) {
                    bad.push(format!("{} t={}", d.label(), t));
                }
            }
        }
        report.record(
            "translation-colour-preserving",
            bad,
            format!("{graphs} graphs, every left translation"),
        );
    }

    // the edge-wise colour-class condition agrees with the local-permutation
    // route, on genuine members and on random bijections
    {
        let mut bad = Vec::new();
        let mut tested = 0usize;
        for d in &data {
            let n = d.x.group().order();
            let mut sample: Vec<GroupMap> = d.permuting.maps.clone();
            for _ in 0..40 {
                sample.push(random_one_fixing_map(n, &mut rng));
            }
            for m in &sample {
                tested += 1;
                let direct = is_colour_permuting(&d.x, m).is_some();
                let via_locals = colour_permuting_via_locals(&d.x, m);
                if direct != via_locals {
                    bad.push(format!("{} map={:?}", d.label(), m.images()));
                }
            }
        }
        report.record(
            "permuting-definitions-agree",
            bad,
            format!("{tested} maps, both routes"),
        );
    }

    // a colour-permuting map walks every monochromatic cycle coherently:
    // phi(g s^n) = phi(g) t^n where t is the step it takes at g
    {
        let mut bad = Vec::new();
        for d in &data {
            let g = d.x.group();
            let translated = translated_sample(g, &mut rng);
            for m in &d.permuting.maps {
                for lt in &translated {
                    let phi = lt.compose(m);
                    'pairs: for v in g.elements() {
                        for &s in d.x.connection() {
                            let t = g.mul(g.inv(phi.apply(v)), phi.apply(g.mul(v, s)));
                            let mut vs = v;
                            let mut image = phi.apply(v);
                            for _ in 0..g.element_order(s) {
                                vs = g.mul(vs, s);
                                image = g.mul(image, t);
                                if phi.apply(vs) != image {
                                    bad.push(format!("{} at v={v} s={s}", d.label()));
                                    break 'pairs;
                                }
                            }
                        }
                    }
                }
            }
        }
        report.record(
            "monochromatic-cycle-consistency",
            bad,
            format!("{total_maps} stabilizer maps with translated variants"),
        );
    }

    // identity-fixing colour-permuting maps take powers to powers, up to
    // the inverse ambiguity
    {
        let mut bad = Vec::new();
        for d in &data {
            let g = d.x.group();
            for m in &d.permuting.maps {
                'pairs: for v in g.elements() {
                    for &s in d.x.connection() {
                        let fs = m.apply(s);
                        let fs_inv = g.inv(fs);
                        let (mut pow, mut up, mut down) = (v, m.apply(v), m.apply(v));
                        for _ in 0..g.element_order(s) {
                            pow = g.mul(pow, s);
                            up = g.mul(up, fs);
                            down = g.mul(down, fs_inv);
                            let got = m.apply(pow);
                            if got != up && got != down {
                                bad.push(format!("{} at v={v} s={s}", d.label()));
                                break 'pairs;
                            }
                        }
                    }
                }
            }
        }
        report.record(
            "power-image-alternative",
            bad,
            format!("{total_maps} stabilizer maps"),
        );
    }

    // identity-fixing colour-permuting maps multiply across the subgroup
    // generated by the involutions of the connection set
    {
        let mut bad = Vec::new();
        for d in &data {
            let g = d.x.group();
            for m in &d.permuting.maps {
                'maps: for v in g.elements() {
                    for &h in &d.involutions.subgroup {
                        if m.apply(g.mul(v, h)) != g.mul(m.apply(v), m.apply(h)) {
                            bad.push(format!("{} at v={v} h={h}", d.label()));
                            break 'maps;
                        }
                    }
                }
            }
        }
        report.record(
            "involution-subgroup-multiplicative",
            bad,
            format!("{total_maps} stabilizer maps"),
        );
    }

    // colour-preserving maps are right-equivariant over that subgroup, and
    // fix it pointwise when they fix the identity
    {
        let mut bad = Vec::new();
        for d in &data {
            let g = d.x.group();
            let translated = translated_sample(g, &mut rng);
            for m in &d.preserving.maps {
                for &h in &d.involutions.subgroup {
                    if m.apply(h) != h {
                        bad.push(format!("{} fixes h={h}", d.label()));
                    }
                }
                for lt in &translated {
                    let phi = lt.compose(m);
                    'outer: for v in g.elements() {
                        for &h in &d.involutions.subgroup {
                            if phi.apply(g.mul(v, h)) != g.mul(phi.apply(v), h) {
                                bad.push(format!("{} at v={v} h={h}", d.label()));
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
        report.record(
            "involution-subgroup-equivariant",
            bad,
            format!("{graphs} graphs, preserving maps with translated variants"),
        );
    }

    // an identity-fixing colour-permuting map is a group automorphism
    // exactly when its local permutation is the same at every vertex
    {
        let mut bad = Vec::new();
        for d in &data {
            let g = d.x.group();
            for m in &d.permuting.maps {
                let base = local_permutation(&d.x, m, g.identity())?;
                let uniform = g.elements().all(|v| {
                    local_permutation(&d.x, m, v)
                        .map(|lp| lp.images == base.images)
                        .unwrap_or(false)
                });
                if uniform != is_group_automorphism(g, m) {
                    bad.push(format!("{} map={:?}", d.label(), m.images()));
                }
            }
        }
        report.record(
            "uniform-local-permutation-iff-automorphism",
            bad,
            format!("{total_maps} stabilizer maps, both directions"),
        );
    }

    // the conjugate construction really lands in the colour-preserving
    // stabilizer and fixes the chosen connection element
    {
        let mut bad = Vec::new();
        let mut built = 0usize;
        for d in &data {
            let g = d.x.group();
            let s_list = d.x.connection();
            for m in &d.permuting.maps {
                let mut picks = vec![(g.identity(), s_list[0])];
                for _ in 0..2 {
                    picks.push((
                        rng.gen_range(0..g.order()),
                        s_list[rng.gen_range(0..s_list.len())],
                    ));
                }
                for (v, s) in picks {
                    built += 1;
                    match make_colour_preserving_conjugate(&d.x, m, v, s) {
                        Ok(psi) => {
                            if !d.preserving.contains(&psi) || psi.apply(s) != s {
                                bad.push(format!("{} at v={v} s={s}", d.label()));
                            }
                        }
                        Err(e) => bad.push(format!("{} at v={v} s={s}: {e}", d.label())),
                    }
                }
            }
        }
        report.record(
            "conjugate-lands-in-preserving-stabilizer",
            bad,
            format!("{built} constructions"),
        );
    }

    // three sufficient conditions for every colour-permuting automorphism
    // being affine, each asserted as an implication
    {
        let mut bad = Vec::new();
        let mut applicable = 0usize;
        for d in &data {
            let g = d.x.group();
            if subgroup_generated(g, &d.star).len() == g.order() {
                applicable += 1;
                if !d.strongly_cca {
                    bad.push(format!("{} star generates", d.label()));
                }
            }
        }
        report.record(
            "star-generates-implies-strongly-cca",
            bad,
            format!("{applicable}/{graphs} graphs had a generating star set"),
        );
    }
    {
        let mut bad = Vec::new();
        let mut applicable = 0usize;
        for d in &data {
            if d.star == d.x.connection() {
                applicable += 1;
                if !d.strongly_cca {
                    bad.push(format!("{} semiregular", d.label()));
                }
            }
        }
        report.record(
            "semiregular-stabilizer-implies-strongly-cca",
            bad,
            format!("{applicable}/{graphs} graphs were semiregular"),
        );
    }
    {
        let mut bad = Vec::new();
        let mut applicable = 0usize;
        for d in &data {
            if d.preserving.len() == 1 {
                applicable += 1;
                if !d.strongly_cca {
                    bad.push(format!("{} trivial stabilizer", d.label()));
                }
            }
        }
        report.record(
            "trivial-stabilizer-implies-strongly-cca",
            bad,
            format!("{applicable}/{graphs} graphs had a trivial stabilizer"),
        );
    }

    // enumerated stabilizers are groups: identity, inverses, composition
    {
        let mut bad = Vec::new();
        for d in &data {
            for set in [&d.preserving, &d.permuting] {
                let n = d.x.group().order();
                if !set.contains(&GroupMap::identity(n)) {
                    bad.push(format!("{} identity missing", d.label()));
                }
                for m in &set.maps {
                    if !set.contains(&m.inverse()) {
                        bad.push(format!("{} inverse missing", d.label()));
                    }
                }
                if set.len() <= 600 {
                    for a in &set.maps {
                        for b in &set.maps {
                            if !set.contains(&a.compose(b)) {
                                bad.push(format!("{} composition missing", d.label()));
                            }
                        }
                    }
                } else {
                    for _ in 0..20_000 {
                        let a = &set.maps[rng.gen_range(0..set.len())];
                        let b = &set.maps[rng.gen_range(0..set.len())];
                        if !set.contains(&a.compose(b)) {
                            bad.push(format!("{} composition missing", d.label()));
                        }
                    }
                }
            }
        }
        report.record(
            "stabilizer-group-closure",
            bad,
            format!("{graphs} graphs, both stabilizers"),
        );
    }

    // the backtracking search agrees with filtering all bijections
    {
        let mut bad = Vec::new();
        let mut covered = 0usize;
        for d in &data {
            if d.x.group().order() > 8 {
                continue;
            }
            covered += 1;
            for mode in [Mode::ColourPreserving, Mode::ColourPermuting, Mode::AllGraph] {
                let slow = stabilizer_by_exhaustion(&d.x, mode);
                let fast = enumerate_stabilizer(&d.x, mode)?;
                if fast.maps != slow {
                    bad.push(format!("{} mode {mode:?}", d.label()));
                }
            }
        }
        report.record(
            "small-order-exhaustive-oracle",
            bad,
            format!("{covered} graphs of order at most 8, all three modes"),
        );
    }

    // the complement of any proper subgroup generates the whole group
    {
        let mut bad = Vec::new();
        let mut tested = 0usize;
        for g in groups.iter().filter(|g| g.order() <= DEFAULT_SCAN_ORDER) {
            for h in all_subgroups(g) {
                if h.len() == g.order() {
                    continue;
                }
                tested += 1;
                let inside: std::collections::BTreeSet<usize> = h.iter().copied().collect();
                let outside: Vec<usize> =
                    g.elements().filter(|v| !inside.contains(v)).collect();
                if subgroup_generated(g, &outside).len() != g.order() {
                    bad.push(format!("{} subgroup {:?}", g.name(), h));
                }
            }
        }
        report.record(
            "complement-of-proper-subgroup-generates",
            bad,
            format!("{tested} proper subgroups"),
        );
    }

    // in a recognized quaternion-times-complement structure the two factor
    // subgroups multiply to the whole group in either order
    {
        let mut bad = Vec::new();
        let mut tested = 0usize;
        for g in &groups {
            let Some(d) = decompose_hamiltonian_2group(g) else {
                continue;
            };
            tested += 1;
            let h = d.quaternion_subgroup(g);
            let k = &d.complement;
            let hk: std::collections::BTreeSet<usize> = h
                .iter()
                .flat_map(|&a| k.iter().map(move |&b| (a, b)))
                .map(|(a, b)| g.mul(a, b))
                .collect();
            let kh: std::collections::BTreeSet<usize> = k
                .iter()
                .flat_map(|&b| h.iter().map(move |&a| (b, a)))
                .map(|(b, a)| g.mul(b, a))
                .collect();
            if hk.len() != g.order() || hk != kh {
                bad.push(g.name().to_string());
            }
        }
        report.record(
            "quaternion-complement-products-commute",
            bad,
            format!("{tested} recognized groups"),
        );
    }

    // the affine test agrees with scanning all (automorphism, translation)
    // pairs
    {
        let mut bad = Vec::new();
        let mut tested = 0usize;
        for g in groups.iter().filter(|g| g.order() <= DEFAULT_SCAN_ORDER) {
            let auts = enumerate_automorphisms(g);
            let x = CayleyGraph::complete(g);
            let stab = enumerate_stabilizer(&x, Mode::ColourPermuting)?;
            let mut sample: Vec<GroupMap> = stab.maps;
            for t in g.elements().take(3) {
                sample.push(GroupMap::translation(g, t).compose(&inversion_map(g)));
            }
            for _ in 0..20 {
                sample.push(random_one_fixing_map(g.order(), &mut rng));
            }
            for m in &sample {
                tested += 1;
                if is_affine(g, m).is_some() != affine_by_pair_scan(g, &auts, m) {
                    bad.push(format!("{} map={:?}", g.name(), m.images()));
                }
            }
        }
        report.record(
            "affine-test-matches-pair-oracle",
            bad,
            format!("{tested} maps"),
        );
    }

    Ok(report)
}

/// Translations to compose lemma checks with: all of them for small
/// groups, a seeded sample for larger ones.
fn translated_sample(g: &FiniteGroup, rng: &mut ChaCha8Rng) -> Vec<GroupMap> {
    let picks: Vec<usize> = if g.order() <= 12 {
        g.elements().collect()
    } else {
        let mut v = vec![g.identity()];
        for _ in 0..3 {
            v.push(rng.gen_range(0..g.order()));
        }
        v
    };
    picks
        .into_iter()
        .map(|t| GroupMap::translation(g, t))
        .collect()
}

// ---------------------------------------------------------------------------
// Suite: classif
// ---------------------------------------------------------------------------

/// The predicted complete-graph stabilizers against brute force, the frozen
/// size table, the affine dichotomy, and the unit-map parity rule.
pub fn suite_classif(max_order: usize, only: Option<&str>) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("classif");
    let groups = roster(max_order, only)?;

    {
        let mut bad = Vec::new();
        for g in &groups {
            let x = CayleyGraph::complete(g);
            let found = enumerate_stabilizer(&x, Mode::ColourPreserving)?;
            let predicted = predict_stabilizer(g);
            if found.maps != predicted.maps {
                bad.push(format!(
                    "{}: found {} maps, predicted {} ({:?})",
                    g.name(),
                    found.len(),
                    predicted.maps.len(),
                    predicted.kind
                ));
            }
        }
        report.record(
            "stabilizer-prediction-exact",
            bad,
            format!("{} complete graphs, pointwise equality", groups.len()),
        );
    }

    {
        let expected = [
            ("Z5", 2usize),
            ("Z4", 2),
            ("Z2xZ2xZ2", 1),
            ("D12", 1),
            ("Dic(Z8)", 2),
            ("Q8xZ3", 1),
            ("Q8", 8),
            ("Q8xZ2", 8),
            ("Q8xZ2xZ2", 8),
        ];
        let mut bad = Vec::new();
        let mut covered = 0usize;
        for (name, size) in expected {
            let Some(g) = groups.iter().find(|g| g.name() == name) else {
                continue;
            };
            covered += 1;
            let x = CayleyGraph::complete(g);
            let found = enumerate_stabilizer(&x, Mode::ColourPreserving)?.len();
            if found != size {
                bad.push(format!("{name}: found {found}, expected {size}"));
            }
        }
        report.record(
            "frozen-stabilizer-sizes",
            bad,
            format!("{covered} documented sizes re-derived"),
        );
    }

    {
        let mut bad = Vec::new();
        let mut exceptional = 0usize;
        for g in &groups {
            let x = CayleyGraph::complete(g);
            let preserving = enumerate_stabilizer(&x, Mode::ColourPreserving)?;
            let permuting = enumerate_stabilizer(&x, Mode::ColourPermuting)?;
            let cca = preserving
                .maps
                .iter()
                .all(|m| is_group_automorphism(g, m));
            let strongly = permuting
                .maps
                .iter()
                .all(|m| is_group_automorphism(g, m));
            let expected = complete_cca_verdict(g);
            if cca != expected || strongly != expected {
                bad.push(format!(
                    "{}: cca={cca} strongly={strongly} expected both {expected}",
                    g.name()
                ));
            }
            if !expected {
                exceptional += 1;
                // the classified witness: inversion preserves colours here
                // but is not a group automorphism
                let iota = inversion_map(g);
                if !preserving.contains(&iota) || is_group_automorphism(g, &iota) {
                    bad.push(format!("{}: inversion witness missing", g.name()));
                }
            }
        }
        report.record(
            "complete-graph-affine-dichotomy",
            bad,
            format!(
                "{} groups, {} on the failing side with inversion witness",
                groups.len(),
                exceptional
            ),
        );
    }

    {
        let mut bad = Vec::new();
        let mut covered = 0usize;
        for g in groups.iter().filter(|g| g.name() == "Q8xZ2") {
            let d = decompose_hamiltonian_2group(g).expect("recognized");
            for set in UnitSet::all() {
                covered += 1;
                let m = unit_fixing_map(g, &d, set);
                if is_affine(g, &m).is_some() != set.is_odd() {
                    bad.push(format!("set {:?}", set));
                }
            }
        }
        report.record(
            "unit-map-affine-parity",
            bad,
            format!("{covered} unit subsets on the order-16 instance"),
        );
    }

    Ok(report)
}

// ---------------------------------------------------------------------------
// Suite: decomposition
// ---------------------------------------------------------------------------

/// Factorization of full colour-permuting automorphism groups, the frozen
/// quaternion stabilizer count, and the two-sided product-set identity.
pub fn suite_decomposition(max_order: usize, only: Option<&str>) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("decomposition");
    let groups = roster(max_order, only)?;

    {
        let mut bad = Vec::new();
        let mut covered = false;
        if let Some(g) = groups.iter().find(|g| g.name() == "Q8") {
            covered = true;
            let x = CayleyGraph::complete(g);
            let n = enumerate_stabilizer(&x, Mode::ColourPermuting)?.len();
            if n != 48 {
                bad.push(format!("found {n}, expected 48"));
            }
        }
        report.record(
            "quaternion-complete-stabilizer-count",
            bad,
            if covered {
                "48 identity-fixing colour-permuting maps".to_string()
            } else {
                "skipped (group above order bound)".to_string()
            },
        );
    }

    {
        let mut bad = Vec::new();
        let mut total = 0usize;
        for name in ["Q8", "Q8xZ2"] {
            let Some(g) = groups.iter().find(|g| g.name() == name) else {
                continue;
            };
            let x = CayleyGraph::complete(g);
            let full = full_automorphism_group(&x, Mode::ColourPermuting)?;
            total += full.len();
            for m in &full.maps {
                match decompose_colour_permuting(&x, m) {
                    Ok(dec) => {
                        if !verify_decomposition(&x, &dec).all() {
                            bad.push(format!("{name}: checks failed for {:?}", m.images()));
                        }
                    }
                    Err(e) => bad.push(format!("{name}: {e}")),
                }
            }
        }
        report.record(
            "full-group-factorization",
            bad,
            format!("{total} automorphisms decomposed and re-verified"),
        );
    }

    {
        let mut bad = Vec::new();
        let mut covered = 0usize;
        for g in groups.iter().filter(|g| g.order() <= DEFAULT_SCAN_ORDER) {
            covered += 1;
            let x = CayleyGraph::complete(g);
            let full = full_automorphism_group(&x, Mode::ColourPermuting)?;
            let preserving_full = full_automorphism_group(&x, Mode::ColourPreserving)?;
            let auts = enumerate_automorphisms(g);
            let mut forward: Vec<GroupMap> = auts
                .iter()
                .flat_map(|a| preserving_full.maps.iter().map(move |c| a.compose(c)))
                .collect();
            forward.sort_unstable();
            forward.dedup();
            let mut reverse: Vec<GroupMap> = preserving_full
                .maps
                .iter()
                .flat_map(|c| auts.iter().map(move |a| c.compose(a)))
                .collect();
            reverse.sort_unstable();
            reverse.dedup();
            if forward != full.maps || reverse != full.maps {
                bad.push(format!(
                    "{}: |full|={} |aut∘pres|={} |pres∘aut|={}",
                    g.name(),
                    full.len(),
                    forward.len(),
                    reverse.len()
                ));
            }
        }
        report.record(
            "product-set-identity",
            bad,
            format!("{covered} complete graphs, products in both orders"),
        );
    }

    {
        let mut bad = Vec::new();
        for g in &groups {
            let x = CayleyGraph::complete(g);
            let preserving = enumerate_stabilizer(&x, Mode::ColourPreserving)?;
            let permuting = enumerate_stabilizer(&x, Mode::ColourPermuting)?;
            let cca = preserving.maps.iter().all(|m| is_group_automorphism(g, m));
            let strongly = permuting.maps.iter().all(|m| is_group_automorphism(g, m));
            if cca && !strongly {
                bad.push(g.name().to_string());
            }
        }
        report.record(
            "cca-implies-strongly-on-complete",
            bad,
            format!("{} complete graphs", groups.len()),
        );
    }

    Ok(report)
}

// ---------------------------------------------------------------------------
// Suite: d12
// ---------------------------------------------------------------------------

/// The two named instances: the square-prism graph on the mixed abelian
/// group of order 8, and the exhaustive dihedral-of-order-12 scan.
pub fn suite_d12() -> Result<SuiteReport> {
    let mut report = SuiteReport::new("d12");

    {
        let g = crate::families::build_group("Z4xZ2")?;
        let x = CayleyGraph::new(&g, &[1, 2, 6])?;
        let preserving = enumerate_stabilizer(&x, Mode::ColourPreserving)?;
        let permuting = enumerate_stabilizer(&x, Mode::ColourPermuting)?;
        let cca = preserving.maps.iter().all(|m| is_group_automorphism(&g, m));
        let strongly = permuting.maps.iter().all(|m| is_group_automorphism(&g, m));
        let bad = if cca && strongly {
            vec![]
        } else {
            vec![format!("cca={cca} strongly={strongly}")]
        };
        report.record(
            "square-prism-strongly-cca",
            bad,
            format!(
                "order-4 generator pair plus an involution; {} permuting stabilizer maps, all automorphisms",
                permuting.len()
            ),
        );
    }

    {
        let g = crate::families::build_group("D12")?;
        let sets = connected_inverse_closed_sets(&g);
        let mut bad_cca = Vec::new();
        let mut witness: Option<Vec<usize>> = None;
        for s in &sets {
            let x = CayleyGraph::new(&g, s)?;
            let preserving = enumerate_stabilizer(&x, Mode::ColourPreserving)?;
            if !preserving.maps.iter().all(|m| is_group_automorphism(&g, m)) {
                bad_cca.push(format!("S={s:?}"));
            }
            if witness.is_none() {
                let permuting = enumerate_stabilizer(&x, Mode::ColourPermuting)?;
                if permuting.maps.iter().any(|m| !is_group_automorphism(&g, m)) {
                    witness = Some(s.clone());
                }
            }
        }
        report.record(
            "dihedral-scan-all-cca",
            bad_cca,
            format!("{} connected inverse-closed connection sets", sets.len()),
        );
        let bad_strong = match &witness {
            Some(_) => vec![],
            None => vec!["no graph with a non-automorphism colour-permuting map".to_string()],
        };
        report.record(
            "dihedral-scan-not-all-strongly-cca",
            bad_strong,
            format!("witness S={:?}", witness.unwrap_or_default()),
        );
    }

    Ok(report)
}

// ---------------------------------------------------------------------------
// Suite: normal-search
// ---------------------------------------------------------------------------

/// Does `g` look like the order-8 group that is cyclic-of-4 times
/// cyclic-of-2?  (Abelian, order 8, exactly four elements of order 4.)
fn is_mixed_order8_abelian(g: &FiniteGroup) -> bool {
    g.order() == 8
        && g.is_abelian()
        && g.elements().filter(|&x| g.element_order(x) == 4).count() == 4
}

/// For each roster group within the bound, scan every connected Cayley
/// graph for one where all graph automorphisms are affine.  Such a graph
/// must exist except for exactly two kinds of group.
pub fn suite_normal_search(max_order: usize, only: Option<&str>) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("normal-search");
    let groups = roster(max_order.min(DEFAULT_SCAN_ORDER), only)?;

    let mut bad_exists = Vec::new();
    let mut bad_absent = Vec::new();
    let mut positives = 0usize;
    let mut negatives = 0usize;
    let mut details = Vec::new();
    for g in &groups {
        let exceptional =
            is_mixed_order8_abelian(g) || decompose_hamiltonian_2group(g).is_some();
        let mut found: Option<Vec<usize>> = None;
        let mut scanned = 0usize;
        for s in connected_inverse_closed_sets(g) {
            scanned += 1;
            let x = CayleyGraph::new(g, &s)?;
            if find_non_affine_graph_automorphism(&x)?.is_none() {
                found = Some(s);
                if !exceptional {
                    break; // one witness settles the expected-positive side
                }
            }
        }
        match (exceptional, &found) {
            (false, Some(s)) => {
                positives += 1;
                details.push(format!("{}: S={s:?}", g.name()));
            }
            (false, None) => bad_exists.push(format!(
                "{}: no normal graph among {scanned} connected sets",
                g.name()
            )),
            (true, None) => negatives += 1,
            (true, Some(s)) => bad_absent.push(format!(
                "{}: unexpectedly normal at S={s:?}",
                g.name()
            )),
        }
    }
    report.record(
        "normal-graph-found-when-expected",
        bad_exists,
        format!("{positives} groups, e.g. {}", details.first().cloned().unwrap_or_default()),
    );
    report.record(
        "no-normal-graph-for-exceptional-groups",
        bad_absent,
        format!("{negatives} exceptional groups, every connected set scanned"),
    );

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build_group;

    #[test]
    fn connected_sets_of_z4() {
        let g = build_group("Z4").unwrap();
        let sets = connected_inverse_closed_sets(&g);
        assert_eq!(sets, vec![vec![1, 3], vec![1, 2, 3]]);
    }

    #[test]
    fn random_sets_are_connected_proper_and_deterministic() {
        let g = build_group("D12").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let sets = random_connected_sets(&g, 20, &mut rng);
        assert!(!sets.is_empty());
        for s in &sets {
            assert!(s.len() < g.order() - 1);
            assert_eq!(subgroup_generated(&g, s).len(), g.order());
        }
        let mut rng2 = ChaCha8Rng::seed_from_u64(7);
        assert_eq!(sets, random_connected_sets(&g, 20, &mut rng2));
    }

    #[test]
    fn permutation_generator_counts() {
        let mut items = vec![0, 1, 2, 3];
        let mut seen = std::collections::BTreeSet::new();
        for_each_permutation(&mut items, &mut |p| {
            seen.insert(p.to_vec());
            true
        });
        assert_eq!(seen.len(), 24);
    }

    #[test]
    fn classif_suite_passes_at_small_order() {
        let report = suite_classif(8, None).unwrap();
        assert!(report.passed(), "{}", report.render());
    }

    #[test]
    fn decomposition_suite_passes_at_small_order() {
        let report = suite_decomposition(8, None).unwrap();
        assert!(report.passed(), "{}", report.render());
    }

    #[test]
    fn lemma_suite_passes_on_one_small_group() {
        let report = suite_lemmas(6, DEFAULT_SEED, None).unwrap();
        assert!(report.passed(), "{}", report.render());
    }

    #[test]
    fn render_marks_failures() {
        let mut r = SuiteReport::new("demo");
        r.record("good", vec![], "fine".into());
        r.record("bad", vec!["oops".into()], "unused".into());
        assert!(!r.passed());
        let text = r.render();
        assert!(text.contains("[PASS] demo/good — fine"));
        assert!(text.contains("[FAIL] demo/bad — oops"));
        assert!(text.contains("1/2 checks passed"));
        let v = r.to_json();
        assert_eq!(v["passed"], false);
    }
}
