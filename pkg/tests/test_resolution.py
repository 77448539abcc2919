import pytest

from a1mod import a1core, structure
from a1mod.errors import NotStabilized, TruncationTooTight
from a1mod.resolution import (ext_dims, h0_tower_count, h0_tower_counts,
                              minimal_resolution)


def test_a0_ext_of_f2_is_diagonal():
    chart = ext_dims(a1core.f2(), algebra="a0", max_s=20, max_t=20)
    got = {k: d for k, d in chart.dims.items() if d}
    assert got == {(s, s): 1 for s in range(21)}


def test_change_of_rings():
    # Ext over the subalgebra generated by Sq1 of F2 equals Ext over the full
    # algebra of the smallest seagull, grid-for-grid
    a = ext_dims(structure.seagull(1), algebra="a1", max_s=10, max_t=20)
    b = ext_dims(a1core.f2(), algebra="a0", max_s=10, max_t=20)
    assert {k: d for k, d in a.dims.items() if d} == \
        {k: d for k, d in b.dims.items() if d}


def test_free_module_resolution_stops():
    chart = ext_dims(a1core.free_module(), max_s=5, max_t=12)
    got = {k: d for k, d in chart.dims.items() if d}
    assert got == {(0, 0): 1}


def test_minimal_resolution_is_complex():
    stages = minimal_resolution(a1core.f2(), max_s=5, max_t=12)
    assert [st.s for st in stages] == list(range(6))
    assert stages[0].gens == [0]


def test_truncated_input_rejected():
    m = structure.seagull_inf(10)
    with pytest.raises(TruncationTooTight):
        minimal_resolution(m, max_s=4, max_t=20)


def test_f2_towers():
    counts = h0_tower_counts(a1core.f2(), 12)
    assert {k: v for k, v in counts.items() if v} == {0: 1, 4: 1, 8: 1, 12: 1}


def test_seagull_towers():
    for n in (1, 2, 3):
        counts = h0_tower_counts(structure.seagull(n), 4 * n + 2)
        assert {k for k, v in counts.items() if v} == \
            {4 * j for j in range(n)}


def test_tower_count_single_stem():
    assert h0_tower_count(a1core.f2(), 4) == 1
    assert h0_tower_count(structure.seagull(1), 4) == 0


def test_free_module_has_no_towers():
    counts = h0_tower_counts(a1core.free_module(), 4)
    assert not any(counts.values())
