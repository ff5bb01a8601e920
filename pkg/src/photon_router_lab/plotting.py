"""Optional SVG line charts over the CSV outputs (needs matplotlib)."""
from __future__ import annotations


def write_svg(path, series: list[dict], title: str = "", xlabel: str = "E") -> None:
    """One line per curve of every series. Output is byte-stable: the SVG
    carries no date and a fixed id salt."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    with matplotlib.rc_context({"svg.hashsalt": "photon-router-lab"}):
        fig, ax = plt.subplots(figsize=(6, 4))
        for s in series:
            for name, ys in s["curves"].items():
                label = f"{s['label']} {name}".strip()
                ax.plot(s["x"], ys, label=label, linewidth=1)
        ax.set_xlabel(xlabel)
        ax.set_title(title)
        ax.legend(fontsize="small")
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
