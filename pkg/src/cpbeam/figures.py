"""Render preset results to PNG.

Simulated curves are drawn with solid lines and filled markers; the stored
reference values are overlaid with dashed lines and open markers so drift is
visible at a glance.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

_COLORS = ("tab:blue", "tab:orange", "tab:green", "tab:red", "tab:purple",
           "tab:brown", "tab:pink", "tab:gray")


def _group_rows(rows):
    """Split result rows into cp curves, psk point sets and ascent levels."""
    cp = {}
    psk = {}
    egt = {}
    for r in rows:
        if r.p is not None:
            cp.setdefault((r.model, r.n_r, r.n_t, r.p), []).append(r)
        elif r.M is not None:
            psk.setdefault((r.model, r.n_r, r.n_t), []).append(r)
        else:
            egt[(r.model, r.n_r, r.n_t)] = r
    for rs in cp.values():
        rs.sort(key=lambda r: r.k)
    for rs in psk.values():
        rs.sort(key=lambda r: r.B)
    return cp, psk, egt


def _plot_reference(ax, reference, x_key="x"):
    for ref in reference:
        style = {"cp": "--o", "psk": "--s", "egt": ":"}[ref["family"]]
        ax.plot(ref[x_key], ref["y"], style, color="0.45", mfc="none",
                linewidth=1.0, markersize=5,
                label=f"ref {ref['label']}")


def _finish(fig, ax, title, xlabel, out_path):
    ax.set_title(title, fontsize=10)
    ax.set_xlabel(xlabel)
    ax.set_ylabel("mean gain [dB]")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=7, ncol=2)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)


def render_k_sweep(preset, rows, out_path):
    cp, _, _ = _group_rows(rows)
    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    _plot_reference(ax, preset["reference"])
    for i, (key, rs) in enumerate(sorted(cp.items())):
        color = _COLORS[i % len(_COLORS)]
        ks = [r.k for r in rs]
        ax.plot(ks, [r.avg_gain_db for r in rs], "-o", color=color,
                markersize=4, label=f"cp p={key[3]} {key[0]} {key[1]}x{key[2]}")
        ax.plot([ks[0], ks[-1]], [rs[0].egt_db] * 2, "-.", color=color,
                linewidth=1.0, label=f"ascent {key[1]}x{key[2]}")
    _finish(fig, ax, preset["title"], "polynomial degree bound k", out_path)


def render_bits_sweep(preset, rows, out_path):
    cp, psk, _ = _group_rows(rows)
    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    _plot_reference(ax, preset["reference"])
    i = 0
    for key, rs in sorted(cp.items()):
        color = _COLORS[i % len(_COLORS)]
        i += 1
        ax.plot([r.B for r in rs], [r.avg_gain_db for r in rs], "-o",
                color=color, markersize=4, label=f"cp {key[0]}")
        ax.plot([rs[0].B, rs[-1].B], [rs[0].egt_db] * 2, "-.",
                color=color, linewidth=1.0, label=f"ascent {key[0]}")
    for key, rs in sorted(psk.items()):
        color = _COLORS[i % len(_COLORS)]
        i += 1
        ax.plot([r.B for r in rs], [r.avg_gain_db for r in rs], "-s",
                color=color, markersize=4, label=f"psk {key[0]}")
    _finish(fig, ax, preset["title"], "feedback bits", out_path)


def render_table(preset, rows, out_path):
    _, _, egt = _group_rows(rows)
    fig, ax = plt.subplots(figsize=(5.5, 4.0))
    keys = sorted(egt)
    xs = range(len(keys))
    ax.bar(xs, [egt[k].egt_db for k in keys], width=0.5, color="tab:blue",
           label="simulated")
    ref_by_nt = {}
    for ref in preset["reference"]:
        ref_by_nt[ref["x"][0]] = ref["y"][0]
    ax.plot(xs, [ref_by_nt[k[2]] for k in keys], "o", color="0.3", mfc="none",
            markersize=9, label="reference")
    ax.set_xticks(list(xs))
    ax.set_xticklabels([f"{k[1]}x{k[2]} {k[0]}" for k in keys], fontsize=8)
    ax.set_ylabel("mean gain [dB]")
    ax.set_title(preset["title"], fontsize=10)
    ax.grid(True, axis="y", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)


def render_preset(preset, rows, out_path):
    kind = preset["kind"]
    if kind == "k_sweep":
        render_k_sweep(preset, rows, out_path)
    elif kind == "bits_sweep":
        render_bits_sweep(preset, rows, out_path)
    elif kind == "table":
        render_table(preset, rows, out_path)
    else:
        raise ValueError(f"unknown preset kind {kind!r}")
