from pathlib import Path

import pytest

from growth.dynamics import simulate
from growth.paths import packed_config
from utils.export import ExportError
from utils.svg_snapshot import (
    COLORS, LEFT, RIGHT, TOP, classify_sites, lozenges, render_svg, save_svg,
)

DATA = Path(__file__).parent / 'data'


def lozenge_lines(config):
    return ''.join(f"{kind} {' '.join(f'{u},{v}' for u, v in verts)}\n"
                   for kind, verts in lozenges(config))


class TestClassifySites:

    def test_two_rows(self):
        assert classify_sites(packed_config(2)) == [(0, 1, TOP), (2, 1, LEFT), (1, 2, TOP)]

    def test_every_particle_is_a_top_lozenge(self):
        config = simulate(2.0, 5, 3)[0]
        tops = [(y, m) for y, m, kind in classify_sites(config) if kind == TOP]
        assert sorted(tops) == sorted((y, m) for m in range(1, 6) for y in config.row(m))


class TestLozenges:

    def test_packed_state_matches_the_golden_file(self):
        golden = (DATA / 'packed_6_lozenges.txt').read_bytes()
        assert lozenge_lines(packed_config(6)).encode('utf-8') == golden


class TestRenderSvg:

    def test_packed_state_uses_top_and_left_colours(self):
        text = render_svg(packed_config(6))
        assert COLORS[TOP] in text
        assert COLORS[LEFT] in text
        assert COLORS[RIGHT] not in text

    def test_identical_inputs_give_identical_bytes(self):
        config = simulate(1.5, 6, 21)[0]
        assert render_svg(config) == render_svg(config)
        assert render_svg(packed_config(6)) == render_svg(packed_config(6))

    def test_save(self, tmp_path):
        path = save_svg(packed_config(3), tmp_path / 'snapshot.svg')
        text = (tmp_path / 'snapshot.svg').read_text(encoding='utf-8')
        assert path.endswith('snapshot.svg')
        assert '<svg' in text
        assert text == render_svg(packed_config(3))

    def test_unwritable_target_raises_export_error(self, tmp_path):
        with pytest.raises(ExportError) as excinfo:
            save_svg(packed_config(3), tmp_path)
        assert excinfo.value.path == str(tmp_path)

    def test_parent_that_is_a_file_raises_export_error(self, tmp_path):
        blocker = tmp_path / 'blocker'
        blocker.write_text('x', encoding='utf-8')
        with pytest.raises(ExportError):
            save_svg(packed_config(3), blocker / 'snapshot.svg')
