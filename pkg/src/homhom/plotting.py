"""Figure rendering for census reports."""

from __future__ import annotations


def render_census_figure(report, path: str) -> None:
    """Bar chart of the census taxonomy, written to path (format by suffix)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    labels = [
        "quasiorder",
        "triangle/point\ninflation",
        "involution\ninflation",
        "not\nhomogeneous",
        "connected\nchecked",
        "connected\nskipped",
    ]
    values = [
        report.hh_quasiorder,
        report.hh_c3_inflation,
        report.hh_dwi_inflation,
        report.not_hh,
        report.connected_checked,
        report.connected_skipped,
    ]
    fig, ax = plt.subplots(figsize=(7.0, 3.2))
    bars = ax.bar(range(len(values)), values, color="#4878a8")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, fontsize=8)
    ax.set_ylabel("isomorphism classes")
    ax.set_title(f"reflexive digraphs on {report.n} vertices ({report.total} classes)")
    for bar, value in zip(bars, values):
        ax.text(bar.get_x() + bar.get_width() / 2, bar.get_height(), str(value),
                ha="center", va="bottom", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
