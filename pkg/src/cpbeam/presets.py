"""Canned experiment scenarios and their reference curves.

Each preset bundles the config dicts for one reproducible report (gain versus
codebook dimension or feedback bits, or a baseline table) together with
digitized reference values the simulated curves are expected to track. The
preset names are stable CLI tokens.
"""

_RAY = {"model": "rayleigh"}


def _cp(system, p, k_list, n_t, fading, seed, correlation=None, k_list_long=()):
    cfg = {
        "system": system,
        "codebook": {"type": "cp"},
        "p": p,
        "k_list": list(k_list),
        "n_t": n_t,
        "fading": dict(fading),
        "trials": 300,
        "master_seed": seed,
    }
    if correlation:
        cfg["correlation"] = dict(correlation)
    if k_list_long:
        cfg["_k_list_long"] = list(k_list_long)
    return cfg


def _psk(system, m, n_t, fading, seed):
    return {
        "system": system,
        "codebook": {"type": "psk", "m": m},
        "n_t": n_t,
        "fading": dict(fading),
        "trials": 300,
        "master_seed": seed,
    }


def _egt_only(n_t, fading, seed, correlation=None):
    cfg = {
        "system": "mimo2",
        "codebook": "none",
        "n_t": n_t,
        "fading": dict(fading),
        "trials": 300,
        "master_seed": seed,
    }
    if correlation:
        cfg["correlation"] = dict(correlation)
    return cfg


def _ref(label, family, x, y):
    return {"label": label, "family": family, "x": list(x), "y": list(y)}


PRESETS = {
    "fig2": {
        "kind": "k_sweep",
        "title": "Mean beamforming gain, uncorrelated Rayleigh, 1 receive antenna",
        "configs": [
            _cp("miso", 5, range(1, 5), 4, _RAY, 1101),
            _cp("miso", 7, range(1, 7), 6, _RAY, 1102),
            _cp("miso", 11, range(1, 6), 10, _RAY, 1103, k_list_long=(6, 7)),
        ],
        "reference": [
            _ref("cp p=5", "cp", range(1, 5),
                 [-0.239619053753024, 3.3958521393797, 4.46314036848437,
                  4.8979393266514]),
            _ref("cp p=7", "cp", range(1, 7),
                 [-0.253403498528197, 4.0367822670575, 5.54525464427945,
                  6.2275715595678, 6.61836731414969, 6.77881810278029]),
            _ref("cp p=11", "cp", range(1, 8),
                 [-0.210319093, 4.616540793, 6.598710735, 7.588866867,
                  8.157901155, 8.504725197, 8.725754903]),
            _ref("phase-only n_t=4", "egt", [1, 4], [5.14383802146888] * 2),
            _ref("phase-only n_t=6", "egt", [1, 6], [6.92397549408398] * 2),
            _ref("phase-only n_t=10", "egt", [1, 7], [9.04229267371817] * 2),
        ],
    },
    "fig3": {
        "kind": "k_sweep",
        "title": "Correlated Rayleigh (rho_tx=0.2), 1 receive antenna",
        "configs": [
            _cp("miso", 5, range(1, 5), 4, _RAY, 1201,
                correlation={"rho_tx": 0.2, "rho_rx": 0.0}),
            _cp("miso", 7, range(1, 7), 6, _RAY, 1202,
                correlation={"rho_tx": 0.2, "rho_rx": 0.0}),
        ],
        "reference": [
            _ref("cp p=5", "cp", range(1, 5),
                 [1.4120476051119122, 3.4933871590290684, 4.520324743030156,
                  4.970709953869074]),
            _ref("cp p=7", "cp", range(1, 7),
                 [1.3401014059425886, 3.9897142968527204, 5.478222688847394,
                  6.1393630980618425, 6.521869697030836, 6.662146747720273]),
            _ref("phase-only n_t=4", "egt", [1, 4], [5.257844112637569] * 2),
            _ref("phase-only n_t=6", "egt", [1, 6], [6.851290813014432] * 2),
        ],
    },
    "fig4": {
        "kind": "k_sweep",
        "title": "Uncorrelated Rician (kappa=0.1), 1 receive antenna",
        "configs": [
            _cp("miso", 5, range(1, 5), 4, {"model": "rician", "kappa": 0.1}, 1301),
            _cp("miso", 7, range(1, 7), 6, {"model": "rician", "kappa": 0.1}, 1302),
            _cp("miso", 11, range(1, 6), 10, {"model": "rician", "kappa": 0.1},
                1303, k_list_long=(6, 7)),
        ],
        "reference": [
            _ref("cp p=5", "cp", range(1, 5),
                 [1.1965589717167373, 3.5917078744215485, 4.582408986781953,
                  5.039713798702667]),
            _ref("cp p=7", "cp", range(1, 7),
                 [1.768009402727896, 4.134893408962696, 5.5655824239347815,
                  6.295993922493743, 6.684676408360371, 6.854130902192326]),
            _ref("cp p=11", "cp", range(1, 8),
                 [2.49763257888494, 4.758409056443319, 6.6176642676284345,
                  7.576598999112689, 8.153285995584325, 8.515667956292802,
                  8.733493087769228]),
            _ref("phase-only n_t=4", "egt", [1, 4], [5.277860109431547] * 2),
            _ref("phase-only n_t=6", "egt", [1, 6], [6.995436334315858] * 2),
            _ref("phase-only n_t=10", "egt", [1, 7], [9.044165105882648] * 2),
        ],
    },
    "fig5": {
        "kind": "k_sweep",
        "title": "Correlated Rician (kappa=0.25, rho_tx=0.2), 1 receive antenna",
        "configs": [
            _cp("miso", 5, range(1, 5), 4, {"model": "rician", "kappa": 0.25}, 1401,
                correlation={"rho_tx": 0.2, "rho_rx": 0.0}),
            _cp("miso", 7, range(1, 7), 6, {"model": "rician", "kappa": 0.25}, 1402,
                correlation={"rho_tx": 0.2, "rho_rx": 0.0}),
        ],
        "reference": [
            _ref("cp p=5", "cp", range(1, 5),
                 [3.754771274779309, 4.408746824370862, 5.175361669948689,
                  5.595372296496828]),
            _ref("cp p=7", "cp", range(1, 7),
                 [4.5414698995799725, 5.055847138581689, 6.107096238821439,
                  6.697765174483293, 7.022497483837965, 7.160816748004737]),
            _ref("phase-only n_t=4", "egt", [1, 4], [5.832774308090536] * 2),
            _ref("phase-only n_t=6", "egt", [1, 6], [7.31340060675379] * 2),
        ],
    },
    "fig6": {
        "kind": "bits_sweep",
        "title": "Gain vs feedback bits, n_t=10, 1 receive antenna",
        "configs": [
            _cp("miso", 11, range(1, 6), 10, _RAY, 1501, k_list_long=(6, 7)),
            _psk("miso", 2, 10, _RAY, 1502),
            _psk("miso", 4, 10, _RAY, 1503),
            _psk("miso", 6, 10, _RAY, 1504),
            _psk("miso", 8, 10, _RAY, 1505),
            _cp("miso", 11, range(1, 6), 10, {"model": "rician", "kappa": 0.25},
                1506, k_list_long=(6, 7)),
            _psk("miso", 2, 10, {"model": "rician", "kappa": 0.25}, 1507),
            _psk("miso", 4, 10, {"model": "rician", "kappa": 0.25}, 1508),
            _psk("miso", 6, 10, {"model": "rician", "kappa": 0.25}, 1509),
            _psk("miso", 8, 10, {"model": "rician", "kappa": 0.25}, 1510),
        ],
        "reference": [
            _ref("cp rayleigh", "cp", [4, 7, 11, 14, 18, 21, 25],
                 [-0.210319093, 4.616540793, 6.598710735, 7.588866867,
                  8.157901155, 8.504725197, 8.725754903]),
            _ref("psk rayleigh", "psk", [9, 18, 24, 27],
                 [4.688025411236641, 7.495339010502744, 8.342203248219048,
                  8.628993072958647]),
            _ref("cp rician", "cp", [4, 7, 11, 14, 18, 21, 25],
                 [4.41712320552366, 5.19184834658193, 6.6553052074169,
                  7.591050001269455, 8.177513676900677, 8.5231158726926262,
                  8.749312688815712]),
            _ref("psk rician", "psk", [9, 18, 24, 27],
                 [5.013508395946521, 7.492317386816486, 8.352567752608255,
                  8.66970099446541]),
            _ref("phase-only rician", "egt", [4, 27], [9.06372640831166] * 2),
        ],
    },
    "fig7": {
        "kind": "k_sweep",
        "title": "Uncorrelated Rayleigh, 2 receive antennas",
        "configs": [
            _cp("mimo2", 5, range(1, 5), 4, _RAY, 1601),
            _cp("mimo2", 7, range(1, 7), 6, _RAY, 1602),
            _cp("mimo2", 11, range(1, 6), 10, _RAY, 1603, k_list_long=(6, 7)),
        ],
        "reference": [
            _ref("cp 2x4", "cp", range(1, 5),
                 [2.9661983645960737, 5.681753676887446, 6.601496146765707,
                  7.014698626024441]),
            _ref("cp 2x6", "cp", range(1, 7),
                 [3.02120294647407, 6.07958531288446, 7.40542812827371,
                  8.0202857088165, 8.34330710172005, 8.48229452604162]),
            _ref("cp 2x10", "cp", range(1, 8),
                 [3.08222422623217, 6.43307077807258, 8.1932542618084,
                  9.05831179119201, 9.58921740109856, 9.88339794271738,
                  10.1145261962665]),
            _ref("phase-only 2x4", "egt", [1, 4], [7.232063659621407] * 2),
            _ref("phase-only 2x6", "egt", [1, 6], [8.650256003416851] * 2),
            _ref("phase-only 2x10", "egt", [1, 7], [10.446439207410315] * 2),
        ],
    },
    "fig8": {
        "kind": "k_sweep",
        "title": "Correlated Rayleigh (rho_tx=0.2, rho_rx=0.1), 2 receive antennas",
        "configs": [
            _cp("mimo2", 5, range(1, 5), 4, _RAY, 1701,
                correlation={"rho_tx": 0.2, "rho_rx": 0.1}),
            _cp("mimo2", 7, range(1, 7), 6, _RAY, 1702,
                correlation={"rho_tx": 0.2, "rho_rx": 0.1}),
        ],
        "reference": [
            _ref("cp 2x4", "cp", range(1, 5),
                 [4.319933389152849, 5.875217558831249, 6.803114374696946,
                  7.172108907944198]),
            _ref("cp 2x6", "cp", range(1, 7),
                 [4.415163284377444, 6.288454218094854, 7.552922858176457,
                  8.092794668782727, 8.416178740899808, 8.546677961735382]),
            _ref("phase-only 2x4", "egt", [1, 4], [7.430159673864289] * 2),
            _ref("phase-only 2x6", "egt", [1, 6], [8.73064589902452] * 2),
        ],
    },
    "fig9": {
        "kind": "k_sweep",
        "title": "Correlated Rician (kappa=0.05, rho_tx=0.2, rho_rx=0.1), 2 receive antennas",
        "configs": [
            _cp("mimo2", 5, range(1, 5), 4, {"model": "rician", "kappa": 0.05},
                1801, correlation={"rho_tx": 0.2, "rho_rx": 0.1}),
            _cp("mimo2", 7, range(1, 7), 6, {"model": "rician", "kappa": 0.05},
                1802, correlation={"rho_tx": 0.2, "rho_rx": 0.1}),
        ],
        "reference": [
            _ref("cp 2x4", "cp", range(1, 5),
                 [5.091036298924715, 6.152293698615353, 7.04749471368231,
                  7.432210384461256]),
            _ref("cp 2x6", "cp", range(1, 7),
                 [5.5566766211164556, 6.6516139842756665, 7.78477058068873,
                  8.336053869333412, 8.652956387628109, 8.794872854038053]),
            _ref("phase-only 2x4", "egt", [1, 4], [7.657455198855027] * 2),
            _ref("phase-only 2x6", "egt", [1, 6], [8.95293468210901] * 2),
        ],
    },
    "table1": {
        "kind": "table",
        "title": "Phase-only ascent baseline (b=8, 10 sweeps), Rayleigh",
        "configs": [
            _egt_only(4, _RAY, 1901),
            _egt_only(6, _RAY, 1902),
        ],
        "reference": [
            _ref("2x4", "egt", [4], [7.2320]),
            _ref("2x6", "egt", [6], [8.6502]),
        ],
    },
    "table2": {
        "kind": "table",
        "title": "Phase-only ascent baseline (b=8, 10 sweeps), Rician kappa=0.1",
        "configs": [
            _egt_only(4, {"model": "rician", "kappa": 0.1}, 1903),
            _egt_only(6, {"model": "rician", "kappa": 0.1}, 1904),
        ],
        "reference": [
            _ref("2x4", "egt", [4], [7.3114]),
            _ref("2x6", "egt", [6], [8.6253]),
        ],
    },
}

PRESET_NAMES = tuple(PRESETS)
