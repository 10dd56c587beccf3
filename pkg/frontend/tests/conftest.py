"""Shared synthetic-CSV builder for the renderer tests."""

import pytest


@pytest.fixture
def make_csv(tmp_path):
    """Write a schema=1 sweep CSV for a 2-cavity grid; `cell(d, t)` may
    override any column (empty string = sentinel)."""

    def _make(name, deltas, ts, cell=None):
        columns = [
            "delta_over_g", "t_over_g", "ground_energy", "degenerate", "status",
            "avg_concurrence", "visibility", "visibility_defined",
            "avg_excitation_variance", "dN_1", "dN_2", "locus_1_2",
        ]
        lines = ["# schema=1", ",".join(columns)]
        for t in ts:
            for d in deltas:
                row = {
                    "delta_over_g": repr(float(d)),
                    "t_over_g": repr(float(t)),
                    "ground_energy": "-1.0",
                    "degenerate": "0",
                    "status": "ok",
                    "avg_concurrence": "0.5",
                    "visibility": "0.5",
                    "visibility_defined": "1",
                    "avg_excitation_variance": "0.5",
                    "dN_1": "0.5",
                    "dN_2": "0.5",
                    "locus_1_2": "-1.0",
                }
                if cell is not None:
                    row.update({k: str(v) for k, v in cell(d, t).items()})
                lines.append(",".join(row[c] for c in columns))
        path = tmp_path / name
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    return _make
