import json
import os

import pytest

from folkman.arrow import arrows, is_maximal_in_family, normalize_tuple
from folkman.canon import canonical_g6
from folkman.gen import GenConstraints, iter_graphs, ramsey_graphs
from folkman.graph import complete, cycle, independence_number
from folkman.graphset import GraphSet, file_sha256
from folkman.pipeline import (
    LadderStep,
    PipelineError,
    PipelineSpec,
    parse_family,
    props_table,
    ramsey_number,
    run_pipeline,
    vertex_deletion_check,
)


def census(t, q, n):
    return GraphSet(g for g in iter_graphs(GenConstraints(n, max_clique=q)) if arrows(g, t))


def spec_for(tmp_path, target, base, ladder, **kw):
    data = {"target": target, "base_tuple": base, "ladder": ladder, **kw}
    return PipelineSpec.from_json(data, workdir=str(tmp_path))


def test_parse_family():
    t, q, n = parse_family("2,2,5;6;16")
    assert t.parts == (2, 2, 5) and (q, n) == (6, 16)
    with pytest.raises(PipelineError):
        parse_family("2,2,5;6")
    with pytest.raises(PipelineError):
        parse_family("2,2,5;x;16")


def test_spec_validation(tmp_path):
    ok = [{"k": 3, "tuple": "2,2"}, {"k": 3, "tuple": "2,2,2"}]
    spec_for(tmp_path, "2,2,2;3;11", "2", ok)
    with pytest.raises(PipelineError):
        spec_for(tmp_path, "2,2,2;3;11", "2", [{"k": 3, "tuple": "2,3"}, {"k": 3, "tuple": "2,2,2"}])
    with pytest.raises(PipelineError):
        spec_for(tmp_path, "2,2,2,2;3;11", "2", ok)
    with pytest.raises(PipelineError):
        spec_for(tmp_path, "2,2,2;3;5", "2", ok)
    with pytest.raises(PipelineError):
        spec_for(tmp_path, "2,2,2;3;11", "2", ok, closure="half")
    with pytest.raises(PipelineError):
        spec_for(tmp_path, "2,2,2;3;11", "2", [])
    with pytest.raises(PipelineError):
        PipelineSpec.from_json({"target": "2,2;3;8"})
    with pytest.raises(ValueError):
        spec_for(tmp_path, "2,2,3;3;11", "3", [{"k": 3, "tuple": "2,3"}, {"k": 3, "tuple": "2,2,3"}])


def test_ramsey_lookup():
    assert ramsey_number(2, 8) == 8
    assert ramsey_number(3, 3) == 6 and ramsey_number(6, 3) == 18
    assert ramsey_number(5, 4) == 25
    assert ramsey_number(5, 6) is None


def test_groetzsch_pipeline(tmp_path):
    ladder = [{"k": 3, "tuple": "2,2"}, {"k": 3, "tuple": "2,2,2"}]
    reports = run_pipeline(spec_for(tmp_path / "a", "2,2,2;3;11", "2", ladder, closure="full"))
    assert [r.n for r in reports] == [5, 8, 11]
    final = reports[-1]
    assert final.maximal_count == 1 and final.closure_count == 1
    reports = run_pipeline(spec_for(tmp_path / "b", "2,2,2;3;10", "2", ladder, closure="full"))
    assert reports[-1].maximal_count == 0 and reports[-1].closure_count == 0


def test_union_matches_census(tmp_path):
    # alpha < 3 graphs exist on 8 vertices with omega < 4, so both branches contribute
    ladder = [{"k": 3, "tuple": "2,3"}]
    spec = spec_for(tmp_path, "2,3;4;8", "3", ladder, closure="full")
    reports = run_pipeline(spec)
    truth = census((2, 3), 4, 8)
    final = os.path.join(str(tmp_path), reports[-1].stage)
    assert GraphSet.load(os.path.join(final, "closure.g6"), canonical=True) == truth
    maximal = GraphSet(g for g in truth if is_maximal_in_family(g, 4))
    assert GraphSet.load(os.path.join(final, "maximal.g6"), canonical=True) == maximal
    assert any(independence_number(g) < 3 for g in maximal)


def test_manifest_and_resume(tmp_path):
    ladder = [{"k": 2, "tuple": "2,3"}]
    spec = spec_for(tmp_path, "2,3;4;7", "3", ladder)
    first = run_pipeline(spec)
    files = {}
    for r in first:
        d = tmp_path / r.stage
        man = json.loads((d / "manifest.json").read_text())
        assert set(man) == {"stage", "tuple", "q", "n", "counts", "inputs", "wall_seconds"}
        assert man["counts"]["maximal"] == len((d / "maximal.g6").read_text().split())
        assert man["counts"]["edge_critical"] == len((d / "critical.g6").read_text().split())
        files[r.stage] = (d / "critical.g6").read_bytes()
    second = run_pipeline(spec)
    assert all(r.resumed for r in second)
    third = run_pipeline(spec, resume=False)
    assert not any(r.resumed for r in third)
    for r in third:
        assert (tmp_path / r.stage / "critical.g6").read_bytes() == files[r.stage]
    assert [r.maximal_count for r in first] == [r.maximal_count for r in third]


def test_ramsey_source_import(tmp_path):
    src = tmp_path / "r34_8.g6"
    ramsey_graphs(3, 4, 8).save(src)
    ladder = [{"k": 3, "tuple": "2,3"}]
    spec = spec_for(tmp_path / "w", "2,3;4;8", "3", ladder, ramsey_sources={"8": str(src)})
    reports = run_pipeline(spec)
    man = json.loads((tmp_path / "w" / reports[-1].stage / "manifest.json").read_text())
    assert {"path": str(src), "sha256": file_sha256(src)} in man["inputs"]
    expected = sum(1 for g in census((2, 3), 4, 8) if is_maximal_in_family(g, 4))
    assert reports[-1].maximal_count == expected


def test_missing_ramsey_source(tmp_path):
    spec = spec_for(tmp_path, "2,5;6;13", "5", [{"k": 5, "tuple": "2,5"}])
    with pytest.raises(PipelineError, match="ramsey source"):
        run_pipeline(spec)


def test_vertex_deletion_check():
    assert vertex_deletion_check([cycle(5)], (2, 2), 3)
    assert not vertex_deletion_check(census((2, 2), 3, 8), (2, 2), 3)
    with pytest.raises(ValueError):
        vertex_deletion_check([cycle(5)], (3,), 3)


def test_props_table():
    table = props_table([cycle(5), complete(4)])
    assert table["edges"] == [(5, 1), (6, 1)]
    assert table["chi"] == [(3, 1), (4, 1)]
    assert table["aut_order"] == [(10, 1), (24, 1)]
    assert table["min_degree"] == [(2, 1), (3, 1)]
    assert table["alpha"] == [(1, 1), (2, 1)]


def test_ladder_step_type():
    s = LadderStep(2, normalize_tuple("2,5"))
    assert s.tuple.m == 6
