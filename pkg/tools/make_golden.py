"""Regenerate data/golden/*.json from mpmath at 40 significant digits.

Run from the repository root:  python3 tools/make_golden.py

mpmath is a development-time oracle only; the package never imports it.
Every entry carries ``provenance``:

* ``derived-oracle``: an mpmath evaluation of a definition (W, M, the
  logarithmic integrals as plain quadrature, parameter derivatives by
  mpmath's own numerical differentiation)
* ``tabulated-form``: the same kind of mpmath value at a parameter pair that
  has a tabulated closed form, labelled with the table id
"""

from __future__ import annotations

import json
import pathlib
from datetime import date

import mpmath as mp

mp.mp.dps = 40
OUT = pathlib.Path(__file__).resolve().parents[1] / "data" / "golden"
XS = ["0.5", "2", "8"]


def s(v) -> str:
    return mp.nstr(mp.re(v), 30)


def f(text: str):
    return mp.mpf(mp.fraction(*map(int, text.split("/")))) if "/" in text else mp.mpf(text)


def w_values():
    out = []
    for k in ["-0.7", "0", "0.3", "1/3", "1.2", "2.5"]:
        for m in ["0", "0.15", "1/2", "0.8", "1", "1.3"]:
            for x in XS + ["20"]:
                out.append({"kappa": k, "mu": m, "x": x, "W": s(mp.whitw(f(k), f(m), f(x))),
                            "provenance": "derived-oracle"})
    return out


def m_values():
    out = []
    for k in ["-0.7", "0.3", "1.2"]:
        for m in ["0.15", "0.8", "1.3"]:
            for x in XS:
                out.append({"kappa": k, "mu": m, "x": x, "M": s(mp.whitm(f(k), f(m), f(x))),
                            "provenance": "derived-oracle"})
    return out


def _dk(k, m, x):
    return mp.diff(lambda t: mp.whitw(t, m, x), k)


def _dm(k, m, x):
    return mp.diff(lambda t: mp.whitw(k, t, x), m)


def derivative_values():
    out = []
    pts = [("0.1", "0.3"), ("-0.4", "0.65"), ("0.8", "0.2"), ("1.7", "1.1"), ("-1.3", "0.45"), ("0.25", "-0.35")]
    for k, m in pts:
        for x in XS:
            K, M, X = f(k), f(m), f(x)
            out.append({"kappa": k, "mu": m, "x": x, "dW_dkappa": s(_dk(K, M, X)), "dW_dmu": s(_dm(K, M, X)),
                        "provenance": "derived-oracle"})
    # lattice points covered by tabulated closed forms
    table_pts = [("T1", "1/4", "1/4"), ("T1", "-1/6", "2/3"), ("T1", "5/4", "3/4"), ("T3A", "1", "3/2"),
                 ("T3A", "3/2", "2"), ("T3B", "0", "3/2"), ("T3B", "2", "5/2"), ("T2-DmK", "0", "1/3"),
                 ("T2-DmK", "0", "1/2"), ("T2-DkW-half", "3", "1/2")]
    for tid, k, m in table_pts:
        for x in XS:
            K, M, X = f(k), f(m), f(x)
            out.append({"kappa": k, "mu": m, "x": x, "dW_dkappa": s(_dk(K, M, X)), "dW_dmu": s(_dm(K, M, X)),
                        "provenance": "tabulated-form", "table_id": tid})
    return out


def _log_quad(g, x):
    """int_0^inf g(t) dt through t = e^v, which tames endpoint singularities.

    The integrands decay like e^{-x t} and vanish like a positive power of t,
    so [e^-400, 200/x] loses less than 1e-80.
    """
    top = mp.log(200 / x)
    cuts = [-400, -40, -10, -3, 0, top / 2, top] if top > 0 else [-400, -40, -10, -3, top]
    return mp.quad(lambda v: g(mp.e**v) * mp.e**v, cuts)


def log_integral_values():
    out = []
    for k, m, x in [("0.1", "0.3", "1"), ("-0.4", "0.2", "2"), ("0.3", "0.7", "0.5"), ("0.2", "0.35", "5")]:
        K, M, X = f(k), f(m), f(x)

        def base(t):
            return mp.e**(-X * t) * t ** (M - K - 0.5) * (1 + t) ** (M + K - 0.5)

        i1 = _log_quad(lambda t: base(t) * mp.log((1 + t) / t), X)
        i3 = _log_quad(lambda t: base(t) * mp.log(t * (1 + t)), X)
        out.append({"kappa": k, "mu": m, "x": x, "I1_star": s(i1), "I3_star": s(i3), "provenance": "derived-oracle"})
    return out


def log_laplace_values():
    out = []
    for nu in ["-0.5", "0", "0.7", "2"]:
        for x in ["0.5", "3"]:
            N, X = f(nu), f(x)
            row = {"nu": nu, "x": x, "provenance": "derived-oracle"}
            for name, sg in (("plus", 1), ("minus", -1)):
                row[name] = s(_log_quad(lambda t: mp.e**(-X * t) * t**N * (sg * mp.log(t) + mp.log(1 + t)), X))
            out.append(row)
    return out


def special_values():
    out = []
    for a, b, x in [("0.5", "1.5", "2"), ("-1.5", "0.5", "3"), ("2.3", "0.7", "-4")]:
        out.append({"fn": "1F1", "a": a, "b": b, "x": x, "value": s(mp.hyp1f1(f(a), f(b), f(x))),
                    "provenance": "derived-oracle"})
    for a, b, x in [("0.5", "1.5", "2"), ("1.3", "2", "0.7"), ("-0.6", "0.4", "5"), ("2", "3", "1")]:
        out.append({"fn": "U", "a": a, "b": b, "x": x, "value": s(mp.hyperu(f(a), f(b), f(x))),
                    "provenance": "derived-oracle"})
    for b, x in [("2", "-1"), ("1.5", "2"), ("3.5", "8")]:
        out.append({"fn": "2F2(1,1;b,2;x)", "b": b, "x": x, "value": s(mp.hyp2f2(1, 1, f(b), 2, f(x))),
                    "provenance": "derived-oracle"})
    for nu, x in [("0.3", "0.5"), ("1.25", "2"), ("2.5", "7")]:
        N, X = f(nu), f(x)
        out.append({"fn": "dK/dnu", "nu": nu, "x": x, "value": s(mp.diff(lambda t: mp.besselk(t, X), N)),
                    "provenance": "derived-oracle"})
    for x in ["0.5", "2", "8"]:
        X = f(x)
        out.append({"fn": "Ein", "x": x, "value": s(mp.ein(X) if hasattr(mp, "ein") else mp.euler + mp.log(X) + mp.e1(X)),
                    "provenance": "derived-oracle"})
    return out


def wi_values():
    out = []
    for k, m, x in [("0.1", "0.3", "1"), ("-0.4", "0.25", "2"), ("0.6", "0.45", "0.5"), ("1", "1/2", "2")]:
        K, M, X = f(k), f(m), f(x)
        v = mp.quad(lambda t: mp.whitw(K, M, t) / t, [X, X + 2, X + 10, X + 40, X + 120, X + 400])
        out.append({"kappa": k, "mu": m, "x": x, "wi": s(v), "provenance": "derived-oracle"})
    return out


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    meta = {"generator": "tools/make_golden.py", "engine": f"mpmath {mp.__version__}", "dps": mp.mp.dps,
            "generated": date.today().isoformat()}
    files = {"whittaker_w.json": w_values(), "whittaker_m.json": m_values(), "derivatives.json": derivative_values(),
             "log_integrals.json": log_integral_values(), "log_laplace.json": log_laplace_values(),
             "special.json": special_values(), "wi.json": wi_values()}
    for name, entries in files.items():
        (OUT / name).write_text(json.dumps({"meta": meta, "entries": entries}, indent=1) + "\n")
        print(name, len(entries))


if __name__ == "__main__":
    main()
