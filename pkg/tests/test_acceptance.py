"""Acceptance gate: one test (or test group) per numbered criterion.

Each check prints `ACCEPTANCE <n> <PASS|FAIL>: <summary>` so a plain
`pytest tests/test_acceptance.py -v -s` reads as a checklist. Three checks
assert reference-table values that are arithmetically inconsistent with the
paradigm data they are supposed to derive from; those are implemented
exactly as stated and marked strict-xfail with the measured truth printed
alongside (see README, Known reference discrepancies).
"""
import math
import random

import numpy as np
import pytest

import geomorph as g
from geomorph import fixtures
from geomorph.composition import AngleLearnConfig, learn_angles, verify_gold_forms
from geomorph.rotations import RotationLearnConfig, learn_all_classes


def mark(n, ok, summary):
    print(f"\nACCEPTANCE {n} {'PASS' if ok else 'FAIL'}: {summary}")
    return ok


def pipeline(name):
    pf = fixtures.load(name)
    corners, gold = pf.corner_matrix(), pf.gold_table()
    expo = g.initial_exponents(corners, gold)
    acts = g.activations(corners, expo)
    return pf, corners, gold, expo, acts


def rows_by_label(acts):
    return {c.label(): dict(zip(acts.morphemes, row))
            for c, row in zip(acts.row_labels, acts.matrix)}


# ---------------------------------------------------------------- criterion 1

ENGLISH_TABLE = {
    "past,1,sg": (0.584, 0.577, 1.353),
    "past,2,sg": (0.584, 0.577, 1.353),
    "past,3,sg": (0.438, 1.154, 1.353),
    "past,1,pl": (0.730, 0.000, 1.353),
    "past,2,pl": (0.730, 0.000, 1.353),
    "past,3,pl": (0.584, 0.577, 1.353),
    "present,1,sg": (1.313, 1.154, 0.615),
    "present,2,sg": (1.313, 1.154, 0.615),
    "present,3,sg": (1.167, 1.731, 0.615),
    "present,1,pl": (1.459, 0.577, 0.615),
    "present,2,pl": (1.459, 0.577, 0.615),
    "present,3,pl": (1.313, 1.154, 0.615),
}


def test_criterion_1_english_weak_verb():
    _, corners, gold, _, acts = pipeline("english_weak_verb")
    by = rows_by_label(acts)
    all36 = all(
        math.isclose(by[label][m], want, abs_tol=0.005)
        for label, row in ENGLISH_TABLE.items()
        for m, want in zip(acts.morphemes, row)
    )
    predicted, ties = g.select_winners(acts)
    twelve = not ties and np.array_equal(predicted.matrix, gold.matrix)
    ok = all36 and twelve
    mark(1, ok, "English: 36 activations within 0.005, winners 12/12")
    assert ok


# ---------------------------------------------------------------- criterion 2

GERMAN_PRESENT_WINNERS = {
    "present,1,sg": ("e", 1.73),
    "present,2,sg": ("st", 1.73),
    "present,3,sg": ("t", 1.41),
    "present,1,pl": ("en", 1.58),
    "present,2,pl": ("t", 1.41),
    "present,3,pl": ("en", 1.58),
}


def test_criterion_2_german_present():
    _, corners, gold, _, acts = pipeline("german_present")
    by = rows_by_label(acts)
    predicted, _ = g.select_winners(acts)
    winners = dict(zip((c.label() for c in acts.row_labels), predicted.winners()))
    ok = all(
        winners[label] == m and math.isclose(by[label][m], value, abs_tol=0.01)
        for label, (m, value) in GERMAN_PRESENT_WINNERS.items()
    )
    mark(2, ok, "German present: 6/6 winners at the published activations")
    assert ok


# ---------------------------------------------------------------- criterion 3


def test_criterion_3_german_full_training():
    _, corners, gold, expo, acts = pipeline("german_full")
    ev = g.evaluate(acts, gold)
    by = rows_by_label(acts)["present,3,sg"]
    init_ok = (
        ev.mismatch_labels() == ("present,3,sg",)
        and math.isclose(by["e"], 1.147, abs_tol=0.005)
        and math.isclose(by["t"], 1.033, abs_tol=0.005)
    )
    trained, trace = g.train(expo, corners, gold, g.TrainConfig(eta=0.1))
    after = rows_by_label(g.activations(corners, trained))["present,3,sg"]
    train_ok = (
        trace.converged
        and trace.iterations == 1
        and math.isclose(after["t"], 1.026, abs_tol=0.01)
        and not g.evaluate(g.activations(corners, trained), gold).mismatches
    )
    ok = init_ok and train_ok
    mark(3, ok, "German full: one initial error, one pass to 12/12, t at 1.026")
    assert ok


# ---------------------------------------------------------------- criterion 4

LATIN_MARKED = {"sg,fem,nom", "sg,fem,abl", "sg,neu,gen", "pl,neu,acc"}


def test_criterion_4_latin_marked_cells_all_miss():
    _, _, gold, _, acts = pipeline("latin_adjectives")
    missed = set(g.evaluate(acts, gold).mismatch_labels())
    ok = LATIN_MARKED <= missed
    mark(4, ok, "Latin: the four published error cells all mismatch at init")
    assert ok


@pytest.mark.xfail(
    strict=True,
    reason="the reference error count is self-inconsistent: the same reference "
    "exponent table also loses sg,fem,voc (ae 1.323 beats gold a 1.180), a "
    "fifth mismatch it never marks; see README, Known reference discrepancies",
)
def test_criterion_4_latin_exactly_four_mismatches():
    _, _, gold, _, acts = pipeline("latin_adjectives")
    missed = set(g.evaluate(acts, gold).mismatch_labels())
    ok = missed == LATIN_MARKED
    mark(4, ok, f"Latin: exactly four mismatches (measured: {sorted(missed)})")
    assert ok


def test_criterion_4_latin_training_converges():
    _, corners, gold, expo, _ = pipeline("latin_adjectives")
    trained, trace = g.train(expo, corners, gold, g.TrainConfig(eta=0.1, max_iters=20))
    correct = not g.evaluate(g.activations(corners, trained), gold).mismatches
    ok = trace.converged and trace.iterations <= 20 and correct
    mark(4, ok, f"Latin: training reaches 36/36 in {trace.iterations} iterations")
    assert ok


# ---------------------------------------------------------------- criterion 5


def test_criterion_5_russian_class_one():
    _, _, gold, _, acts = pipeline("russian_class_one")
    ev = g.evaluate(acts, gold)
    tops = [acts.matrix[i].max() for i in range(12)]
    ok = ev.mismatches == () and all(
        math.isclose(t, 1.225, abs_tol=0.005) or math.isclose(t, 1.414, abs_tol=0.005)
        for t in tops
    )
    mark(5, ok, "Russian class I: 12/12 with winning activations 1.225 or 1.414")
    assert ok


# ---------------------------------------------------------------- criterion 6

PUBLISHED_COUNTS = {
    "0": [460, 177, 374, 127, 126],
    "ni": [0, 510, 80, 218, 212],
    "kä": [234, 0, 0, 119, 114],
}
PUBLISHED_NORMALIZED = {
    "0": [0.714, 0.275, 0.580, 0.197, 0.195],
    "ni": [0.0, 0.851, 0.133, 0.364, 0.354],
    "kä": [0.817, 0.0, 0.0, 0.416, 0.398],
}
PUBLISHED_BASE_ACTIVATIONS = {
    "sg,nom": ("0", 1.294),
    "sg,gen": ("kä", 1.233),
    "sg,loc": ("kä", 1.215),
    "pl,nom": ("ni", 0.984),
    "pl,gen": ("ni", 1.215),
    "pl,loc": ("ni", 1.205),
}

XFAIL_NUER = dict(
    strict=True,
    reason="the reference weighted-count table cannot be produced by any "
    "paradigm data: its null-suffix column sums to 637 by number but 627 by "
    "case, and no reading of the class table reproduces it; see README, "
    "Known reference discrepancies",
)


def _nuer_base():
    inv = fixtures.load("nuer_classes").class_inventory()
    counts, _ = g.weighted_counts(inv, 3)
    base = g.normalize_columns(counts)
    return inv, counts, base


@pytest.mark.xfail(**XFAIL_NUER)
def test_criterion_6_weighted_counts_exact():
    _, counts, _ = _nuer_base()
    got = {m: counts.matrix[:, j].tolist() for j, m in enumerate(counts.morphemes)}
    ok = got == {m: [float(x) for x in v] for m, v in PUBLISHED_COUNTS.items()}
    mark(6, ok, f"Nuer: weighted counts equal the published integers (measured {got})")
    assert ok


@pytest.mark.xfail(**XFAIL_NUER)
def test_criterion_6_normalized_base_close():
    _, _, base = _nuer_base()
    ok = all(
        math.isclose(base.column(m)[k], want, abs_tol=0.002)
        for m, col in PUBLISHED_NORMALIZED.items()
        for k, want in enumerate(col)
    )
    mark(6, ok, "Nuer: normalized base within 0.002 of the published columns")
    assert ok


def test_criterion_6_base_realizes_class_three():
    inv, _, base = _nuer_base()
    label = g.class_of_base(base, inv)
    ok = label == "III"
    mark(6, ok, f"Nuer: the base configuration realizes class {label}")
    assert ok


@pytest.mark.xfail(**XFAIL_NUER)
def test_criterion_6_base_activations_close():
    inv, _, base = _nuer_base()
    by = rows_by_label(g.activations(inv.corners, base))
    ok = all(
        math.isclose(by[label][m], want, abs_tol=0.002)
        for label, (m, want) in PUBLISHED_BASE_ACTIVATIONS.items()
    )
    mark(6, ok, "Nuer: six base-class activations within 0.002 of published")
    assert ok


@pytest.mark.xfail(**XFAIL_NUER)
def test_criterion_6_default_case_projections():
    """gen/loc defaults: the projections backing them, within 0.002."""
    _, _, base = _nuer_base()
    ka, ni = base.column("kä"), base.column("ni")
    # coordinate order: sg pl nom gen loc
    got = tuple(
        round(float(x), 4)
        for x in (ka[0] + ka[3], ka[0] + ka[4], ni[1] + ni[3], ni[1] + ni[4])
    )
    want = (1.233, 1.215, 1.215, 1.205)
    ok = all(math.isclose(a, b, abs_tol=0.002) for a, b in zip(got, want))
    mark(6, ok, f"Nuer: default-case projections {got} vs {want}")
    assert ok


# ---------------------------------------------------------------- criterion 7

PUBLISHED_DISTANCES = {
    "I": 3, "II": 1, "IV": 2, "V": 5, "VI": 2, "VII": 1, "VIII": 3, "IX": 2,
    "X": 1, "XI": 2, "XII": 2, "XIII": 3, "XIV": 3, "XV": 3, "XVI": 3,
}
PUBLISHED_MEAN_ITERS = {
    "I": 8.73, "II": 1.48, "IV": 2.00, "V": 4.86, "VI": 7.36, "VII": 2.83,
    "VIII": 10.03, "IX": 6.69, "X": 2.98, "XI": 5.22, "XII": 5.56,
    "XIII": 9.72, "XIV": 3.50, "XV": 7.91, "XVI": 7.62,
}


@pytest.fixture(scope="module")
def rotation_batch():
    inv = fixtures.load("nuer_classes").class_inventory()
    cfg = RotationLearnConfig(base_increment=0.1, margin_floor=0.02, runs=100, seed=0)
    stats, base_label = learn_all_classes(inv, cfg, 3)
    return {s.class_label: s for s in stats}, base_label


def test_criterion_7_rotation_convergence(rotation_batch):
    stats, base_label = rotation_batch
    shortfall = {c: s.converged_runs for c, s in stats.items() if s.converged_runs < 95}
    ok = base_label == "III" and not shortfall
    mark(7, ok, "Nuer rotations: every class I-XVI converges in >=95/100 seeded runs")
    # iteration counts are reported, and flagged but not failed beyond 5x
    for label, s in stats.items():
        if label in PUBLISHED_MEAN_ITERS and s.mean_iterations:
            ratio = s.mean_iterations / PUBLISHED_MEAN_ITERS[label]
            flag = "  [FLAG >5x published mean]" if ratio > 5 else ""
            print(
                f"  class {label}: {s.converged_runs}/100 runs, "
                f"mean {s.mean_iterations:.1f} iterations (x{ratio:.1f}){flag}"
            )
    assert ok


@pytest.mark.xfail(
    strict=True,
    reason="the reference distance column disagrees with the reference class "
    "table for classes VIII, XII, XIII (and lists different distances for "
    "the identical classes XII and XIV); see README, Known reference "
    "discrepancies",
)
def test_criterion_7_distances_match_published(rotation_batch):
    stats, _ = rotation_batch
    got = {c: s.distance for c, s in stats.items() if c != "III"}
    ok = got == PUBLISHED_DISTANCES
    diff = {c: (got[c], PUBLISHED_DISTANCES[c]) for c in got if got[c] != PUBLISHED_DISTANCES[c]}
    mark(7, ok, f"Nuer: distances equal the published column (diffs: {diff})")
    assert ok


# ---------------------------------------------------------------- criterion 8


def test_criterion_8_latin_deponent():
    pf = fixtures.load("latin_deponent")
    corners, gold = pf.corner_matrix(), pf.gold_table()
    expo = g.initial_exponents(corners, gold)
    fs = pf.feature_system()
    act_ax, pas_ax = fs.value_index["active"], fs.value_index["passive"]
    rotated = g.deponent_transform(expo, act_ax, pas_ax)

    # expected matrix: voice coordinates swap, passive columns take the old
    # active value, active columns go to the negative passive half-space
    expected = np.array(expo.matrix)
    expected[act_ax], expected[pas_ax] = expo.matrix[pas_ax], -expo.matrix[act_ax]
    matrix_ok = np.allclose(rotated.matrix, expected, atol=1e-9)

    predicted, ties = g.select_winners(g.activations(corners, rotated))
    winners = dict(zip((c.label() for c in corners.row_labels), predicted.winners()))
    active_cells = ["sg,1,active", "sg,2,active", "sg,3,active",
                    "pl,1,active", "pl,2,active", "pl,3,active"]
    expected_suffixes = ["or", "aris", "atur", "amur", "amini", "antur"]
    select_ok = not ties and [winners[c] for c in active_cells] == expected_suffixes

    four = expo
    for _ in range(4):
        four = g.deponent_transform(four, act_ax, pas_ax)
    cycle_ok = np.allclose(four.matrix, expo.matrix, atol=1e-12)

    ok = matrix_ok and select_ok and cycle_ok
    mark(8, ok, "deponent: rotated matrix exact, active cells take passive "
                "suffixes, four turns restore the original")
    assert ok


# ---------------------------------------------------------------- criterion 9


def test_criterion_9_german_plural_angle_learning():
    pf = fixtures.load("german_plurals")
    gold = pf.gold_forms()
    stems, affixes = pf.stem_labels(), pf.affix_labels()
    converged = reproduced = null_nearest = 0
    for seed in range(100):
        res = learn_angles(stems, affixes, gold, pf.plane,
                           AngleLearnConfig(stepsize=0.01, margin=0.05,
                                            max_iters=500, seed=seed))
        if res.converged:
            converged += 1
        if not verify_gold_forms(res.model, stems, affixes, gold):
            reproduced += 1
        d_null = res.model.axis_distance("0", "sg")
        if all(res.model.axis_distance(a, "sg") > d_null for a in affixes if a != "0"):
            null_nearest += 1
    ok = converged == 100 and reproduced == 100 and null_nearest == 100
    mark(9, ok, f"German plurals: {converged}/100 converged, {reproduced}/100 "
                f"reproduce all 10 forms, null nearest singular in {null_nearest}/100")
    assert ok


# ---------------------------------------------------------------- criterion 10

# learned angles of the published German-plural run, degrees from the plural axis
AUTO_DEG, S_DEG = -31.568, 28.909


def test_criterion_10_spanish_fixture():
    pf = fixtures.load("spanish_verbs")
    model = pf.angle_model()
    affixes = pf.affix_labels()
    picks = {
        (stem, value): g.select_affix_by_angle(model, stem, affixes, value)
        for stem in ("cant", "com")
        for value in ("first", "second")
    }
    select_ok = (
        picks[("cant", "second")] == "as"
        and picks[("com", "second")] == "es"
        and picks[("cant", "first")] == "o"
        and picks[("com", "first")] == "o"
    )
    deg = math.pi / 180.0
    _, magnitude = g.angle_of_sum(AUTO_DEG * deg, S_DEG * deg)
    magnitude_ok = math.isclose(magnitude, 1.728, abs_tol=0.01)
    ok = select_ok and magnitude_ok
    mark(10, ok, f"Spanish selections correct; stem+affix magnitude {magnitude:.3f}")
    assert ok


# ---------------------------------------------------------------- criterion 11


def test_criterion_11_property_suites():
    """The six property suites live in test_properties.py; spot-run them here."""
    from test_properties import (
        random_paradigm,
        test_delta_update_matches_finite_difference_gradient,
        test_initialization_matches_counting_oracle_on_random_paradigms,
        test_select_pair_matches_exhaustive_oracle,
    )

    test_initialization_matches_counting_oracle_on_random_paradigms()
    test_select_pair_matches_exhaustive_oracle()
    test_delta_update_matches_finite_difference_gradient()

    rng = random.Random(5)
    # unit norms after training, rigidity, argmax scale invariance
    for _ in range(10):
        _, corners, gold = random_paradigm(rng)
        if len(corners.row_labels) < len(gold.morphemes):
            continue
        expo = g.initial_exponents(corners, gold)
        for _ in range(3):
            expo, _ = g.delta_step(expo, corners, gold, g.TrainConfig(eta=0.1))
        assert np.all(np.abs(np.linalg.norm(expo.matrix, axis=0) - 1) <= 1e-9)

        plan = [g.PlaneRotation(*rng.sample(range(corners.matrix.shape[1]), 2),
                                rng.uniform(-3, 3)) for _ in range(5)]
        rotated = g.apply_rotation(expo, plan)
        assert np.allclose(g.gram_matrix(rotated), g.gram_matrix(expo), atol=1e-9)

        acts = g.activations(corners, expo)
        scaled = np.array(acts.matrix)
        scaled[0] *= 7.5
        from geomorph.exponence import ActivationMatrix

        rescaled = ActivationMatrix(acts.row_labels, acts.morphemes, scaled)
        a, _ = g.select_winners(acts)
        b, _ = g.select_winners(rescaled)
        assert np.array_equal(a.matrix, b.matrix)
    mark(11, True, "property suites: oracles, norms, rigidity, invariance, gradient")
