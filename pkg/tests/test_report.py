import jsonschema
import pytest

import utils
from conftest import FAST_CONFIG, profile
from manifolds import preset
from obstruction import analyze_all
from report import REPORT_VERSION, build_report, render_text, validate_report
from rules import ANALYTIC, QUOTES


def _report(text, manifold_name, **kwargs):
    m = preset(manifold_name)
    p = profile(text)
    return build_report(p, m, analyze_all(p, m, **kwargs), FAST_CONFIG)


def test_report_matches_schema():
    report = validate_report(_report("sl(2,R)", "genus-2"))
    assert report["report_v"] == REPORT_VERSION
    assert report["algebra"]["expression"] == "sl(2,R)"
    assert report["manifold"]["euler"] == -2
    assert report["tool"]["config"]["samples"] == FAST_CONFIG.samples


def test_invariants_report_without_manifold():
    report = validate_report(build_report(profile("st(4,R)"), None, [], FAST_CONFIG))
    assert report["verdicts"] == []
    assert any(note["theorem"] == "Derived length of st" for note in report["discrepancies"])


def test_schema_rejects_unknown_keys():
    report = _report("abelian(2)", "torus")
    report["extra"] = True
    with pytest.raises(jsonschema.ValidationError):
        validate_report(report)


def test_reports_are_byte_stable():
    first = utils.dump_json(_report("st(2,C)", "sphere"))
    second = utils.dump_json(_report("st(2,C)", "sphere"))
    assert first == second


def test_text_rendering_quotes_the_statements():
    text = render_text(_report("sl(2,R)", "genus-2", regularities=(ANALYTIC,)))
    assert "effective / analytic: IMPOSSIBLE" in text
    assert QUOTES["Cor. smoothanal(b)"] in text
    assert "R6 (nonreal spectral rank at half dimension, negative euler)" in text
    assert "r = 1, r_NR = 1 (cartan-rank, exact)" in text


def test_text_rendering_of_tags_and_discrepancies():
    text = render_text(_report("st(3,C)", "sphere", regularities=(ANALYTIC,)))
    assert "[spectral rank heuristic]" in text
    assert "r = 2, r_NR = 2 (numeric-sampled, heuristic)" in text
    assert "over the real spectrum: r = 4, r_NR = 4" in text
    assert "Spectral ranks of st(m,C)" in text
