import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cxxmetrics.quality import (
    CRITERIA,
    DEFAULT_CAPS,
    DEFAULT_MATRIX,
    MATRIX_COLUMNS,
    ConfigurationError,
    MaintainabilityReport,
    Relation,
    RelationMatrix,
    UnassessableError,
    criterion_score,
    maintainability_report,
    normalize_metric,
    package_maintainability,
)

# Literal copy of the relation table, one row per criterion, columns in
# MATRIX_COLUMNS order: LOC CLOC Statements Methods MCCt MCCm CBO DIT NOC LCOM RFC WMC
TABLE = {
    "Analyzability": "I I I I I I I I i I I I",
    "Changeability": "I I I I I I I I I I I I",
    "Stability": "i i i i i i I i i I i i",
    "Testability": "I I I I I I I I i I I I",
}


def test_default_matrix_cell_for_cell():
    for criterion, letters in TABLE.items():
        for column, letter in zip(MATRIX_COLUMNS, letters.split()):
            assert DEFAULT_MATRIX.cells[(criterion, column)] is Relation(letter), (criterion, column)
    assert len(DEFAULT_MATRIX.cells) == len(CRITERIA) * len(MATRIX_COLUMNS)
    assert DEFAULT_MATRIX.cells[("Stability", "CBO")] is Relation.STRONG_INVERSE
    assert DEFAULT_MATRIX.cells[("Stability", "LOC")] is Relation.INVERSE


class TestNormalize:
    @pytest.mark.parametrize("value, cap, expected", [(0, 7, 0.0), (7, 7, 1.0), (25, 50, 0.5), (900, 50, 1.0)])
    def test_examples(self, value, cap, expected):
        assert normalize_metric(value, cap) == expected

    @pytest.mark.parametrize("cap", [0, -1])
    def test_bad_cap(self, cap):
        with pytest.raises(ConfigurationError):
            normalize_metric(1, cap)


class TestCriterionScore:
    def test_zero_and_capped(self):
        zero = {m: 0 for m in MATRIX_COLUMNS}
        capped = {m: DEFAULT_CAPS[m] * 2 for m in MATRIX_COLUMNS}
        for c in CRITERIA:
            assert criterion_score(zero, c) == 1.0
            assert criterion_score(capped, c) == 0.0

    def test_two_strong_metrics(self):
        # LOC and CBO are both strong for Changeability: normalized 0.5 and 0.25.
        score = criterion_score({"LOC": 500, "CBO": 3.5}, "Changeability")
        assert score == pytest.approx(0.625)

    def test_unassessable(self):
        with pytest.raises(UnassessableError, match="criterion unassessable"):
            criterion_score({}, "Stability")
        with pytest.raises(UnassessableError):
            criterion_score({"LOC": 1}, "Stability", weights={"I": 0, "i": 0})


class TestReport:
    def test_zero_vector(self):
        r = maintainability_report({m: 0 for m in MATRIX_COLUMNS})
        assert r.criteria == {c: 1.0 for c in CRITERIA} and r.overall == 1.0

    def test_capped_vector(self):
        r = maintainability_report({m: 10 ** 6 for m in MATRIX_COLUMNS})
        assert r.overall == 0.0

    def test_mcc_hurts_testability_more_than_stability(self):
        v = {m: 0 for m in MATRIX_COLUMNS}
        v.update(MCC_traditional=40, MCC_modified=30)
        r = maintainability_report(v)
        assert r.criteria["Stability"] > r.criteria["Testability"]

    def test_records_caps_and_round_trips(self):
        r = maintainability_report({"LOC": 10, "WMC": 3})
        assert r.caps == {m: DEFAULT_CAPS[m] for m in MATRIX_COLUMNS}
        assert MaintainabilityReport.from_dict(r.to_dict()) == r

    def test_package_level_averages_normalized_values(self):
        r = package_maintainability([{"LOC": 1000}, {"LOC": 0}, {"CBO": 14}])
        assert r.contributions == {"LOC": 0.5, "CBO": 1.0}

    def test_custom_matrix(self):
        m = RelationMatrix.from_rows({c: " ".join("i" * len(MATRIX_COLUMNS)) for c in CRITERIA})
        r = maintainability_report({"LOC": 500}, matrix=m)
        assert r.criteria["Analyzability"] == 0.5

    def test_bad_matrix_row(self):
        with pytest.raises(ConfigurationError):
            RelationMatrix.from_rows({"Stability": "i I"})


metric_values = st.fixed_dictionaries(
    {},
    optional={m: st.floats(min_value=0, max_value=1e6, allow_nan=False) for m in MATRIX_COLUMNS},
).filter(bool)


@settings(max_examples=300, deadline=None)
@given(metric_values, st.data(), st.floats(min_value=0, max_value=1e4, allow_nan=False))
def test_monotone_and_bounded(vec, data, bump):
    # Raising a value the vector carries; absent metrics are "not applicable".
    metric = data.draw(st.sampled_from(sorted(vec)))
    before = maintainability_report(vec)
    raised = dict(vec)
    raised[metric] += bump
    after = maintainability_report(raised)
    for c in CRITERIA:
        assert 0.0 <= before.criteria[c] <= 1.0
        assert after.criteria[c] <= before.criteria[c] + 1e-12
    assert before.overall == pytest.approx(sum(before.criteria.values()) / 4)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=0, max_value=1, allow_nan=False))
def test_strong_relation_moves_score_at_least_as_much(x):
    # Stability: CBO is strong, DIT is weak; same normalized value for each.
    base = {"CBO": 0, "DIT": 0, "LOC": 0}
    strong = criterion_score({**base, "CBO": x * DEFAULT_CAPS["CBO"]}, "Stability")
    weak = criterion_score({**base, "DIT": x * DEFAULT_CAPS["DIT"]}, "Stability")
    assert 1 - strong >= 1 - weak - 1e-12
