import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "font.size": 11,
    "axes.labelsize": 12,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "legend.frameon": False,
    "lines.linewidth": 1.4,
    "svg.hashsalt": "graphent",
    "svg.fonttype": "none",
}


def line_plot(path, x, series, xlabel, ylabel, title=None, marker=None):
    """Write a line chart of ``series`` (label -> y values) against ``x``.

    The output format follows the file extension. SVG and PDF files carry no
    creation date, so identical inputs give identical files.
    """
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(6.4, 4.0))
        for label, y in series.items():
            ax.plot(x, y, label=label, marker=marker)
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        if title:
            ax.set_title(title)
        if len(series) > 1:
            ax.legend()
        fig.tight_layout()
        fmt = str(path).rsplit(".", 1)[-1].lower()
        metadata = {"Date": None} if fmt in ("svg", "pdf") else None
        fig.savefig(path, metadata=metadata)
        plt.close(fig)
    return path
