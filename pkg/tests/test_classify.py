import json

import pandas as pd
import pytest

import classify
from classify import (KNOWN_SEQUENCES, WilfClassReport, avoidance_sequence, classify_patterns, known_label,
                      pattern_family, read_report, relabel_orbits, report_frame, write_report, write_report_csv)
from errors import InconsistencyError, ReportFormatError, TreeDomainError
from genfunc import PowerSeries
from words import WordSet, parse_wordset, reflect_wordset

W = parse_wordset


@pytest.fixture(scope="module")
def seven_leaf_report():
    return classify_patterns(3, 7, 19)


@pytest.mark.parametrize("pattern, label", [("{11}", "7.2"), ("{1}", "5"), ("{1,2}", "7.1")])
def test_avoidance_sequence_both_methods(pattern, label):
    assert avoidance_sequence(W(pattern), 19, "both").coefficients == KNOWN_SEQUENCES[label]


def test_avoidance_sequence_small_cases():
    assert avoidance_sequence(W("{e}"), 5, "brute").coefficients == (0, 1, 0, 0, 0, 0)
    assert avoidance_sequence(WordSet(3), 5, "genfunc").coefficients == (0,) * 6
    with pytest.raises(TreeDomainError):
        avoidance_sequence(W("{1}"), 5, "guess")
    with pytest.raises(TreeDomainError):
        avoidance_sequence(W("{1}"), 0)


def test_long_series_defaults_to_the_equation_system():
    series = avoidance_sequence(W("{11}"), 25)
    assert series[25] == 18356714


def test_method_disagreement_is_reported(monkeypatch):
    monkeypatch.setattr(classify, "series_from_system", lambda system, n: PowerSeries((0,) * (n + 1)))
    with pytest.raises(InconsistencyError, match=r"av\(1\)"):
        avoidance_sequence(W("{11}"), 9, "both")


def test_five_leaf_patterns_form_one_class():
    report = classify_patterns(3, 5, 19)
    assert len(report.classes) == 1
    only = report.classes[0]
    assert [str(V) for V in only.members] == ["{1}", "{2}", "{3}"]
    assert only.label == "5"
    assert only.equation == "x*a^2 - a + x"
    assert only.equation_certified


def test_seven_leaf_classes(seven_leaf_report):
    first, second = seven_leaf_report.classes
    assert [str(V) for V in first.members] == ["{11}", "{22}", "{33}"]
    assert first.label == "7.2" and first.equation == "x*a^4 + x*a^2 - a + x"
    assert len(second.members) == 9
    assert second.label == "7.1" and second.equation == "2*x*a^2 - x^2*a - a + x"
    assert first.equation_certified and second.equation_certified


def test_partition_is_complete_and_disjoint(seven_leaf_report):
    members = seven_leaf_report.members
    assert len(members) == len(set(members)) == 12
    assert set(members) == set(pattern_family(3, 7))


@pytest.mark.parametrize("m, L", [(3, 7), (3, 9), (2, 4), (2, 5), (4, 7)])
def test_reflections_share_a_class(m, L):
    report = classify_patterns(m, L, 15, "genfunc", fit=False)
    for wilf_class in report.classes:
        assert {reflect_wordset(V) for V in wilf_class.members} == set(wilf_class.members)


def test_reflection_reduced_family():
    report = classify_patterns(3, 7, 19, reflection_reduced=True, fit=False)
    assert len(report.members) == 7
    assert len(report.classes) == 2
    assert all(c.reflection_reduced for c in report.classes)


def test_worker_count_does_not_change_the_report():
    serial = classify_patterns(3, 7, 15, fit=False)
    threaded = classify_patterns(3, 7, 15, fit=False, n_jobs=2, backend="threading")
    assert serial == threaded


def test_progress_bar_follows_finished_sequences(monkeypatch):
    passed = []

    def recording_bar(iterable, **kwargs):
        for item in iterable:
            passed.append(item)
            yield item

    monkeypatch.setattr(classify, "tqdm", recording_bar)
    report = classify_patterns(3, 7, 15, "genfunc", fit=False, n_jobs=2, backend="threading", progress=True)
    assert len(passed) == len(report.members)
    assert all(isinstance(item, PowerSeries) for item in passed)


def test_classes_are_stable_from_15_to_19_terms():
    for L in (5, 7, 9):
        short = classify_patterns(3, L, 15, "genfunc", fit=False)
        full = classify_patterns(3, L, 19, "genfunc", fit=False)
        assert [c.members for c in short.classes] == [c.members for c in full.classes]


def test_nine_leaf_classes_with_the_equation_system():
    report = classify_patterns(3, 9, 19, "genfunc", fit=False)
    assert [c.label for c in report.classes] == ["9.3", "9.2", "9.1"]
    assert len(report.members) == 55
    assert [c.sequence[13] for c in report.classes] == [1337, 1324, 1323]


@pytest.mark.slow
def test_nine_leaf_classes_by_brute_force_with_equations():
    report = classify_patterns(3, 9, 19, "both")
    assert [c.sequence[19] for c in report.classes] == [213197, 206316, 205011]
    assert [c.equation for c in report.classes] == [
        "x*a^6 + x*a^4 + x*a^2 - a + x",
        "x*a^4 - x^2*a^3 + 2*x*a^2 - x^2*a - a + x",
        "3*x*a^2 - 3*x^2*a - a + x^3 + x",
    ]


def test_precondition_errors():
    with pytest.raises(TreeDomainError):
        classify_patterns(3, 2)
    with pytest.raises(TreeDomainError):
        classify_patterns(3, 9, 7)


def test_relabel_orbits(seven_leaf_report):
    schroeder_class = seven_leaf_report.classes[1]
    orbits = relabel_orbits(schroeder_class.members, 3)
    assert sorted(len(orbit) for orbit in orbits) == [3, 6]
    assert relabel_orbits(seven_leaf_report.classes[0].members, 3) == [seven_leaf_report.classes[0].members]


def test_known_label():
    for label, listing in KNOWN_SEQUENCES.items():
        assert known_label(listing) == label
    assert known_label((0, 1, 0, 1)) is None
    assert known_label((0, 1, 0, 0, 0)) is None


def test_json_roundtrip(tmp_path, seven_leaf_report):
    path = write_report(seven_leaf_report, tmp_path / "reports" / "ternary_7.json")
    assert read_report(path) == seven_leaf_report
    data = json.loads(path.read_text(encoding="utf-8"))
    assert set(data) == {"arity", "pattern_leaves", "terms", "method", "classes"}
    assert data["terms"] == 19
    assert set(data["classes"][0]) == {"members", "sequence", "equation", "equation_certified", "reflection_reduced"}


def test_five_leaf_report_reread(tmp_path):
    path = write_report(classify_patterns(3, 5, 19), tmp_path / "ternary_5.json")
    report = read_report(path)
    assert len(report.classes) == 1 and len(report.classes[0].members) == 3


def test_empty_report_is_rejected(tmp_path):
    with pytest.raises(TreeDomainError):
        write_report(WilfClassReport(3, 2, 19, "brute", ()), tmp_path / "empty.json")
    path = tmp_path / "empty.json"
    path.write_text(json.dumps({"arity": 3, "pattern_leaves": 2, "terms": 19, "method": "brute", "classes": []}))
    with pytest.raises(ReportFormatError, match="at least one class"):
        read_report(path)


def test_malformed_reports(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"arity": 3,\n "classes": [')
    with pytest.raises(ReportFormatError, match="line 2"):
        read_report(path)
    path.write_text(json.dumps({"arity": 3}))
    with pytest.raises(ReportFormatError, match="classes"):
        read_report(path)
    path.write_text(json.dumps({"arity": 3, "pattern_leaves": 7, "terms": 19, "method": "brute",
                                "classes": [{"members": ["{1,12}"], "sequence": [0, 1], "equation": None,
                                             "equation_certified": False}]}))
    with pytest.raises(ReportFormatError, match=r"classes\[0\]\.members\[0\]"):
        read_report(path)


def test_report_frame_and_csv(tmp_path, seven_leaf_report):
    frame = report_frame(seven_leaf_report)
    assert list(frame.columns) == ["label", "size", "members", "sequence", "equation", "certified"]
    assert frame["size"].tolist() == [3, 9]
    path = write_report_csv(seven_leaf_report, tmp_path / "ternary_7.csv")
    back = pd.read_csv(path)
    assert back["label"].astype(str).tolist() == ["7.2", "7.1"]
    assert back["members"].iloc[0] == "{11} {22} {33}"
