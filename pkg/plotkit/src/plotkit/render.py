"""CSV-to-image rendering for the thermal-machine sweeps.

The renderer never recomputes any physics: it consumes the CSV files
emitted by the steerdemon CLI (including their ``#`` metadata header)
and turns them into line plots.  Solid lines carry the general-unitary
scheme or the measured work ratios; dashed lines carry the restricted
scheme or the bound reference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

REQUIRED_COLUMNS = {
    "figure2": ("p", "eta", "work_general", "work_restricted"),
    "figure4": ("eta", "p", "ratio_work", "ratio_bound", "measurement_pair"),
    "frontier": ("weight_angle", "alpha", "beta", "alpha_ref", "beta_ref"),
}


class SchemaError(ValueError):
    """CSV header does not match the requested figure kind."""


@dataclass(frozen=True)
class PlotSpec:
    """What to render: input CSV, figure kind, output image path."""

    csv_path: Path
    kind: str
    out_path: Path
    pair: str = "xz"  # which measurement pair of a figure4 CSV to draw
    dpi: int = 150
    title: str | None = None

    def __post_init__(self):
        if self.kind not in REQUIRED_COLUMNS:
            raise SchemaError(f"unknown figure kind {self.kind!r}")
        object.__setattr__(self, "csv_path", Path(self.csv_path))
        object.__setattr__(self, "out_path", Path(self.out_path))


@dataclass(frozen=True)
class Series:
    label: str
    style: str  # solid | dashed | markers
    n_points: int


@dataclass(frozen=True)
class RenderResult:
    out_path: Path
    kind: str
    series: tuple[Series, ...]
    metadata: dict = field(compare=False)

    def structure(self) -> tuple:
        """Hashable summary used to compare re-renders."""
        return (self.kind, self.series)


def read_csv(path: Path) -> tuple[dict, list[str], list[dict]]:
    """Parse a steerdemon CSV: metadata comments, header, typed rows."""
    metadata: dict = {}
    header: list[str] | None = None
    rows: list[dict] = []
    text = Path(path).read_text()
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            metadata[key.strip()] = value.strip()
            continue
        cells = line.split(",")
        if header is None:
            header = cells
            continue
        row = {}
        for name, cell in zip(header, cells):
            try:
                row[name] = float(cell)
            except ValueError:
                row[name] = cell
        rows.append(row)
    if header is None:
        raise SchemaError(f"{path} holds no CSV header")
    return metadata, header, rows


def _check_schema(kind: str, header: list[str], path: Path) -> None:
    missing = [c for c in REQUIRED_COLUMNS[kind] if c not in header]
    if missing:
        raise SchemaError(
            f"{path} is not a {kind} CSV: missing column {missing[0]!r}"
        )


def _finite(points):
    return [(x, y) for x, y in points if math.isfinite(x) and math.isfinite(y)]


def _figure2_series(rows):
    etas = sorted({row["eta"] for row in rows}, reverse=True)
    for eta in etas:
        data = [r for r in rows if r["eta"] == eta]
        data.sort(key=lambda r: r["p"])
        yield (f"eta={eta:g} (general)", "solid",
               _finite([(r["p"], r["work_general"]) for r in data]))
        yield (f"eta={eta:g} (restricted)", "dashed",
               _finite([(r["p"], r["work_restricted"]) for r in data]))


def _figure4_series(rows, pair):
    data = [r for r in rows if r["measurement_pair"] == pair]
    if not data:
        raise SchemaError(f"figure4 CSV has no rows for measurement pair {pair!r}")
    ps = sorted({r["p"] for r in data})
    for p in ps:
        sub = sorted((r for r in data if r["p"] == p), key=lambda r: r["eta"])
        yield (f"p={p:g}", "solid", _finite([(r["eta"], r["ratio_work"]) for r in sub]))
    sub = sorted((r for r in data if r["p"] == ps[0]), key=lambda r: r["eta"])
    yield ("bound", "dashed", _finite([(r["eta"], r["ratio_bound"]) for r in sub]))


def _frontier_series(rows):
    data = sorted(rows, key=lambda r: r["weight_angle"])
    yield ("LP frontier", "markers", _finite([(r["alpha"], r["beta"]) for r in data]))
    yield ("quarter circle", "dashed",
           _finite([(r["alpha_ref"], r["beta_ref"]) for r in data]))


AXIS_LABELS = {
    "figure2": ("p", "work / omega0"),
    "figure4": ("eta", "ratio to p=1 work"),
    "frontier": ("alpha", "beta"),
}


def render(spec: PlotSpec) -> RenderResult:
    """Render one CSV to an image and report the series structure."""
    metadata, header, rows = read_csv(spec.csv_path)
    _check_schema(spec.kind, header, spec.csv_path)
    if spec.kind == "figure2":
        series = list(_figure2_series(rows))
    elif spec.kind == "figure4":
        series = list(_figure4_series(rows, spec.pair))
    else:
        series = list(_frontier_series(rows))

    fig, ax = plt.subplots(figsize=(6.4, 4.4))
    for label, style, points in series:
        xs = [x for x, _ in points]
        ys = [y for _, y in points]
        if style == "markers":
            ax.plot(xs, ys, "o", markersize=4, label=label)
        elif style == "dashed":
            ax.plot(xs, ys, "--", label=label)
        else:
            ax.plot(xs, ys, "-", label=label)
    xlabel, ylabel = AXIS_LABELS[spec.kind]
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if spec.kind == "frontier":
        ax.set_aspect("equal")
    title = spec.title or metadata.get("command", spec.kind)
    if spec.kind == "figure4":
        title = f"{title} ({spec.pair})"
    ax.set_title(title)
    ax.legend(fontsize=8)
    fig.tight_layout()
    out = Path(spec.out_path)
    if out.parent != Path(""):
        out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, dpi=spec.dpi)
    plt.close(fig)

    return RenderResult(
        out_path=out,
        kind=spec.kind,
        series=tuple(Series(label, style, len(points)) for label, style, points in series),
        metadata=metadata,
    )
