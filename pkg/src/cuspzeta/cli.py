"""Command-line front end: configuration, data ingestion, dispatch and result emission."""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import geodesic, rootsys, scattering, trace
from .errors import CuspZetaError, ParseError, ValidationError

OUT_DIR_ENV = "CUSPZETA_OUT_DIR"


# --- configuration ---------------------------------------------------------------------------

@dataclass
class RunConfig:
    n: int = 1
    kappa: int = 1
    volume: float = 1.0
    plancherel_scale: float = 1.0
    c_T1: float = 0.0
    spectrum_path: str | None = None
    scattering_path: str | None = None
    synthetic: tuple | None = None  # (count, min_length, growth, seed)
    eigenvalues: list = field(default_factory=list)
    kernel_dim: int = 0
    tolerance: float = 1e-10
    truncation: int = 4
    abscissa: float | None = None
    family: str | None = None
    format: str = "csv"

    def validate(self) -> None:
        if not 1e-14 <= self.tolerance <= 1e-4:
            raise ValidationError("tolerance must lie in [1e-14, 1e-4]")
        if self.format not in ("csv", "text"):
            raise ValidationError("format must be csv or text")
        if self.family not in (None, "geometric", "spectral"):
            raise ValidationError("family must be geometric or spectral")
        for p in (self.spectrum_path, self.scattering_path):
            if p is not None and not Path(p).is_file():
                raise ValidationError(f"referenced file {p} does not exist")

    def echo(self) -> list[tuple[str, str]]:
        out = [("n", self.n), ("kappa", self.kappa), ("volume", self.volume),
               ("plancherel_scale", self.plancherel_scale), ("c_T1", self.c_T1)]
        if self.spectrum_path:
            out.append(("spectrum", self.spectrum_path))
        if self.synthetic:
            out.append(("synthetic", " ".join(_fmt(v) for v in self.synthetic)))
        if self.scattering_path:
            out.append(("scattering", self.scattering_path))
        for e in self.eigenvalues:
            out.append(("eigenvalue", " ".join(_fmt(v) for v in e)))
        if self.kernel_dim:
            out.append(("kernel_dim", self.kernel_dim))
        out.append(("tolerance", self.tolerance))
        out.append(("truncation", self.truncation))
        if self.abscissa is not None:
            out.append(("abscissa", self.abscissa))
        return [(k, _fmt(v)) for k, v in out]


_INT_KEYS = {"n", "kappa", "kernel_dim", "truncation"}
_FLOAT_KEYS = {"volume", "plancherel_scale", "c_T1", "tolerance", "abscissa"}


def parse_config(text: str, base: Path | None = None) -> RunConfig:
    """Key-value configuration, one `key value...` per line, '#' comments."""
    cfg = RunConfig()
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, *vals = line.split()
        try:
            if key in _INT_KEYS:
                _need(vals, 1, lineno)
                setattr(cfg, key, int(vals[0]))
            elif key in _FLOAT_KEYS:
                _need(vals, 1, lineno)
                setattr(cfg, key, float(vals[0]))
            elif key in ("spectrum", "scattering"):
                _need(vals, 1, lineno)
                p = Path(vals[0])
                if base is not None and not p.is_absolute():
                    p = base / p
                setattr(cfg, key + "_path", str(p))
            elif key == "synthetic":
                _need(vals, 4, lineno)
                cfg.synthetic = (int(vals[0]), float(vals[1]), float(vals[2]), int(vals[3]))
            elif key == "eigenvalue":
                if len(vals) not in (1, 2, 3):
                    raise ParseError("eigenvalue takes LAM [MULT [SIGN]]", lineno)
                cfg.eigenvalues.append((float(vals[0]), *(int(v) for v in vals[1:])))
            elif key in ("family", "format"):
                _need(vals, 1, lineno)
                setattr(cfg, key, vals[0])
            else:
                raise ParseError(f"unknown key {key!r}", lineno)
        except ValueError as e:
            if isinstance(e, ParseError):
                raise
            raise ParseError(f"bad value in {line!r}", lineno) from None
    return cfg


def _need(vals, k: int, lineno: int) -> None:
    if len(vals) != k:
        raise ParseError(f"expected {k} values, got {len(vals)}", lineno)


# --- records and emission ------------------------------------------------------------------------

@dataclass
class Record:
    command: str
    inputs: list = field(default_factory=list)
    columns: list = field(default_factory=list)
    rows: list = field(default_factory=list)
    meta: list = field(default_factory=list)


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if v is None:
        return ""
    return str(v)


def emit(record: Record, fmt: str = "csv") -> bytes:
    """Serialize a record; identical records give identical bytes."""
    buf = io.StringIO()
    if fmt == "csv":
        buf.write(f"# command: {record.command}\n")
        for k, v in record.inputs:
            buf.write(f"# input {k}: {v}\n")
        for k, v in record.meta:
            buf.write(f"# {k}: {v}\n")
        w = csv.writer(buf, lineterminator="\n")
        if record.columns:
            w.writerow(record.columns)
        for r in record.rows:
            w.writerow([_fmt(v) for v in r])
    elif fmt == "text":
        buf.write(f"command {record.command}\n")
        for k, v in record.inputs:
            buf.write(f"input {k} {v}\n")
        for k, v in record.meta:
            buf.write(f"meta {k} {v}\n")
        if record.columns:
            buf.write("columns " + " ".join(record.columns) + "\n")
        for r in record.rows:
            buf.write("row " + " ".join(_fmt(v) or "-" for v in r) + "\n")
    else:
        raise ValidationError(f"unknown format {fmt!r}")
    return buf.getvalue().encode("utf-8")


# --- building inputs ------------------------------------------------------------------------------

def manifold(cfg: RunConfig) -> trace.ManifoldConfig:
    return trace.ManifoldConfig(cfg.n, cfg.kappa, cfg.volume, cfg.plancherel_scale, cfg.c_T1)


def length_spectrum(cfg: RunConfig) -> geodesic.LengthSpectrum | None:
    if cfg.spectrum_path:
        with open(cfg.spectrum_path, encoding="utf-8") as f:
            return geodesic.parse_length_spectrum(f, cfg.n)
    if cfg.synthetic:
        count, lmin, growth, seed = cfg.synthetic
        return geodesic.synthesize_spectrum(count, lmin, growth, seed, n=cfg.n)
    return None


def scattering_model(cfg: RunConfig) -> scattering.ScatteringModel:
    if cfg.scattering_path:
        with open(cfg.scattering_path, encoding="utf-8") as f:
            model = scattering.parse_scattering(f)
        if model.n != cfg.n or model.kappa != cfg.kappa:
            raise ValidationError("scattering file disagrees with the configuration on n or kappa")
        return model
    return scattering.constant_model(cfg.n, cfg.kappa)


def spectral_datum(cfg: RunConfig) -> trace.SpectralDatum:
    ev = tuple(trace.Eigenvalue(*e) for e in cfg.eigenvalues)
    return trace.SpectralDatum(ev, cfg.kernel_dim, scattering_model(cfg))


def build_family(cfg: RunConfig):
    kind = cfg.family
    spec = length_spectrum(cfg)
    if kind is None:
        kind = "geometric" if spec is not None and not (cfg.scattering_path or cfg.eigenvalues) else "spectral"
    if kind == "geometric":
        if spec is None:
            raise ValidationError("a geometric family needs a spectrum file or a synthetic spectrum")
        return trace.GeometricFamily(manifold(cfg), spec)
    return trace.SpectralFamily(manifold(cfg), spectral_datum(cfg))


def _complex(text: str) -> complex:
    text = text.strip()
    if "," in text:
        re_, im = text.split(",", 1)
        return complex(float(re_), float(im))
    return complex(text.replace("i", "j"))


def _grid(text: str, log: bool = False) -> np.ndarray:
    """A:B:STEP (linear) or A:B:N (log-spaced, N points) when log is set."""
    try:
        a, b, c = (float(x) for x in text.split(":"))
    except ValueError:
        raise ValidationError(f"bad grid {text!r}; expected A:B:STEP") from None
    if log:
        if a <= 0 or b <= a or c < 1 or c != int(c):
            raise ValidationError("log grid needs 0 < A < B and an integer point count")
        return np.logspace(math.log10(a), math.log10(b), int(c))
    if c <= 0 or b < a:
        raise ValidationError("grid needs A <= B and STEP > 0")
    k = int(math.floor((b - a) / c + 1e-9))
    return a + c * np.arange(k + 1)


# --- commands -------------------------------------------------------------------------------------

def cmd_validate(cfg: RunConfig, args) -> Record:
    rec = Record("validate", columns=["check", "n", "sign", "status", "detail"])
    for n in range(1, 6):
        d = rootsys.weyl_dimension(n)
        rec.rows.append(["weyl_dimension", n, "", d == 2 ** (n - 1), d])
        for sg in (1, -1):
            rec.rows.append(["reflection_sum", n, sg, rootsys.reflection_sum_identity(n, sg), ""])
        op, om = rootsys.omega(n, 1), rootsys.omega(n, -1)
        same = op.polynomial == om.polynomial and op.digamma_coefficient == om.digamma_coefficient
        rec.rows.append(["omega_sign_independent", n, "", same, ""])
        deg = op.polynomial.degree
        rec.rows.append(["omega_degree", n, "", deg <= max(2 * n - 4, 0), deg])
    model = scattering_model(cfg)
    r = scattering.fe_residual(model)
    rec.rows.append(["scattering_fe", cfg.n, "", r <= scattering.FE_TOL, r])
    spec = length_spectrum(cfg)
    if spec is not None:
        rec.rows.append(["length_spectrum", cfg.n, "", True, len(spec)])
    return rec


def cmd_unipotent(cfg: RunConfig, args) -> Record:
    n = cfg.n
    u = rootsys.unipotent_density(n, cfg.kappa, cfg.c_T1)
    om = rootsys.omega(n, 1)
    rec = Record("unipotent", columns=["part", "power", "exact", "value"])
    rec.meta.append(("P_U", "(kappa/2) P^n + c_T1 with P^n = 2d psi(1) + polynomial"))
    for k, c in enumerate(om.polynomial.coefficients):
        rec.rows.append(["P^n polynomial", 2 * k, str(c), float(c)])
    rec.rows.append(["P^n psi(1) coefficient", 0, str(om.psi1_coefficient), float(om.psi1_coefficient)])
    for k, c in enumerate(u.p_u_coefficients()):
        rec.rows.append(["P_U", 2 * k, "", c])
    rec.rows.append(["Q digamma coefficient", 0, str(u.digamma_coefficient), float(u.digamma_coefficient)])
    return rec


def cmd_zeta(cfg: RunConfig, args) -> Record:
    fam = build_family(cfg)
    rec = Record(f"zeta {args.kind}",
                 columns=["s_re", "s_im", "value_re", "value_im", "log_re", "log_im", "terms", "tail_bound"])
    for text in args.s:
        s = _complex(text)
        if isinstance(fam, trace.GeometricFamily):
            f = trace.zeta_odd if args.kind == "odd" else trace.zeta_even
            z = f(s, fam.spectrum, cfg.n, cfg.abscissa)
            rec.meta.append(("method", "Dirichlet series"))
        else:
            lg = fam.log_Zo(s - cfg.n) if args.kind == "odd" else fam.log_Ze(s - cfg.n)
            z = trace.ZetaEvaluation(complex(np.exp(lg)), lg, 0, 0.0)
            rec.meta.append(("method", "continuation from the spectral side"))
        rec.rows.append([s.real, s.imag, z.value.real, z.value.imag, z.log_value.real, z.log_value.imag,
                         z.truncation_count, z.tail_bound])
    rec.meta = list(dict.fromkeys(rec.meta))
    return rec


def cmd_eta(cfg: RunConfig, args) -> Record:
    fam = build_family(cfg)
    rec = Record("eta", columns=["route", "value_re", "value_im"])
    vals = {}
    for route in ("heat", "zeta"):
        v = complex(trace.eta_invariant(fam, route))
        vals[route] = v
        rec.rows.append([route, v.real, v.imag])
    rec.meta.append(("route_difference", _fmt(abs(vals["heat"] - vals["zeta"]))))
    return rec


def cmd_det(cfg: RunConfig, args) -> Record:
    fam = build_family(cfg)
    grid = _grid(args.s_grid)
    logC = trace.determinant_constant(fam, trace.S_REF)
    rec = Record("det", columns=["s", "log_det_mellin", "log_det_product", "log_C"])
    rec.meta.append(("s_ref", _fmt(trace.S_REF)))
    rec.meta.append(("log_C_at_s_ref", _fmt(logC)))
    for s in grid:
        a = fam.log_det_mellin(float(s)) if s > 0 else None
        b = trace.regularized_determinant(float(s), fam, "product").real
        c = a - trace._product_part(fam, float(s)).real if a is not None else None
        rec.rows.append([float(s), a, b, c])
    return rec


def cmd_heat_trace(cfg: RunConfig, args) -> Record:
    mcfg = manifold(cfg)
    spec = length_spectrum(cfg) or geodesic.LengthSpectrum()
    datum = spectral_datum(cfg) if (cfg.scattering_path or cfg.eigenvalues or cfg.kernel_dim) else None
    rec = Record("heat-trace", columns=["t", "I", "H_re", "H_im", "U", "total_re", "total_im", "spectral", "residual"])
    rec.meta.append(("parity", args.parity))
    for t in _grid(args.t_grid, log=True):
        t = float(t)
        i = trace.identity_term(t, mcfg, args.parity)
        h, hb = trace.hyperbolic_term(t, spec, cfg.n, args.parity)
        u = trace.unipotent_term(t, mcfg, args.parity)
        total = i + h + u
        row = [t, i, h.real, h.imag, u, total.real, total.imag]
        if datum is not None:
            sp = trace.relative_trace_spectral(t, datum, args.parity)
            rec.rows.append(row + [sp, abs(sp - total)])
        else:
            rec.rows.append(row + [None, None])
    return rec


def cmd_poles(cfg: RunConfig, args) -> Record:
    datum = spectral_datum(cfg)
    rec = Record("poles", columns=["location_re", "location_im", "order", "residue_re", "residue_im", "source"])
    ledgers = [scattering.pole_ledger(datum.scattering, "odd"), scattering.pole_ledger(datum.scattering, "even"),
               trace.spectral_pole_ledger(datum, "odd"), trace.spectral_pole_ledger(datum, "even")]
    ez = trace.eta_zeta_ledger(manifold(cfg), datum, length_spectrum(cfg), K=cfg.truncation)
    ledgers += [ez.eta, ez.zeta]
    for led in ledgers:
        for e in led.entries:
            rec.rows.append([e.location.real, e.location.imag, e.order, e.residue.real, e.residue.imag, e.source])
    rec.meta.append(("regular_at_zero", _fmt(ez.regular_at_zero())))
    return rec


def cmd_verify_fe(cfg: RunConfig, args) -> Record:
    fam = build_family(cfg)
    rec = Record(f"verify-fe {args.kind}", columns=["s_re", "s_im", "residual"])
    eta = trace.eta_invariant(fam, "heat") if args.kind == "odd" else None
    for text in args.s:
        s = _complex(text)
        r = trace.verify_fe_odd(s, fam, eta) if args.kind == "odd" else trace.verify_fe_even(s, fam)
        rec.rows.append([s.real, s.imag, r])
    if eta is not None:
        rec.meta.append(("eta_heat", _fmt(complex(eta))))
    return rec


def cmd_ms_check(cfg: RunConfig, args) -> Record:
    model = scattering_model(cfg)
    rec = Record("ms-check", columns=["lambda", "R", "lhs", "rhs", "residual"])
    for R in args.R:
        lhs, rhs, res = scattering.maass_selberg_check(model, args.lam, R, args.sign)
        rec.rows.append([args.lam, R, lhs, rhs, res])
    return rec


COMMANDS = {
    "validate": cmd_validate, "unipotent": cmd_unipotent, "zeta": cmd_zeta, "eta": cmd_eta,
    "det": cmd_det, "heat-trace": cmd_heat_trace, "poles": cmd_poles, "verify-fe": cmd_verify_fe,
    "ms-check": cmd_ms_check,
}

PLOTS = {"det": ("s", ["log_det_mellin", "log_det_product"]), "heat-trace": ("t", ["total_re", "spectral"]),
         "ms-check": ("R", ["residual"])}


def plot_record(rec: Record, path: Path) -> Path | None:
    """Render grid records with matplotlib's Agg backend."""
    spec = PLOTS.get(rec.command)
    if spec is None or not rec.rows:
        return None
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xcol, ycols = spec
    xi = rec.columns.index(xcol)
    fig, ax = plt.subplots(figsize=(6, 4))
    for yc in ycols:
        yi = rec.columns.index(yc)
        pts = [(r[xi], r[yi]) for r in rec.rows if r[yi] is not None]
        if pts:
            ax.plot(*zip(*pts), marker=".", label=yc)
    if rec.command == "heat-trace":
        ax.set_xscale("log")
    if rec.command == "ms-check":
        ax.set_yscale("log")
    ax.set_xlabel(xcol)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


# --- argument parsing -----------------------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    # SUPPRESS keeps options given before the command from being reset by the subparser
    p = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS, allow_abbrev=False)
    p.add_argument("--config", help="key-value configuration file")
    p.add_argument("--n", type=int, dest="cfg_n")
    p.add_argument("--kappa", type=int)
    p.add_argument("--c-t1", type=float, dest="c_T1")
    p.add_argument("--volume", type=float)
    p.add_argument("--spectrum", help="length-spectrum file")
    p.add_argument("--scattering", help="scattering-model file")
    p.add_argument("--family", choices=["geometric", "spectral"])
    p.add_argument("--format", choices=["csv", "text"])
    p.add_argument("--out-dir", help=f"write results here (overrides ${OUT_DIR_ENV})")
    p.add_argument("--plot", action="store_true", help="also render a PNG for grid commands")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="cuspzeta", description=__doc__, parents=[common], allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="run the exact invariant suites")
    sub.add_parser("unipotent", parents=[common], help="emit P^n, P_U and Q data (use --n)")
    p = sub.add_parser("zeta", parents=[common], help="evaluate Z^o or Z^e")
    p.add_argument("kind", choices=["odd", "even"])
    p.add_argument("--s", nargs="+", required=True, help="points as RE,IM")
    sub.add_parser("eta", parents=[common], help="eta invariant by both routes")
    p = sub.add_parser("det", parents=[common], help="log-determinant on an s-grid")
    p.add_argument("--s-grid", required=True, help="A:B:STEP")
    p = sub.add_parser("heat-trace", parents=[common], help="trace terms on a log t-grid")
    p.add_argument("--t-grid", required=True, help="A:B:N (N log-spaced points)")
    p.add_argument("--parity", choices=["even", "odd"], default="even")
    sub.add_parser("poles", parents=[common], help="emit the pole ledgers")
    p = sub.add_parser("verify-fe", parents=[common], help="functional-equation residuals")
    p.add_argument("kind", choices=["odd", "even"])
    p.add_argument("--s", nargs="+", required=True, help="points as RE,IM")
    p = sub.add_parser("ms-check", parents=[common], help="Maass-Selberg check of the model section")
    p.add_argument("--lambda", type=float, dest="lam", required=True)
    p.add_argument("--R", type=float, nargs="+", required=True)
    p.add_argument("--sign", type=int, choices=[1, -1], default=1)
    return parser


def load_config(args) -> RunConfig:
    if getattr(args, "config", None):
        path = Path(args.config)
        if not path.is_file():
            raise ValidationError(f"config file {path} does not exist")
        cfg = parse_config(path.read_text(encoding="utf-8"), path.parent)
    else:
        cfg = RunConfig()
    for attr, key in (("cfg_n", "n"), ("kappa", "kappa"), ("c_T1", "c_T1"), ("volume", "volume"),
                      ("spectrum", "spectrum_path"), ("scattering", "scattering_path"),
                      ("family", "family"), ("format", "format")):
        v = getattr(args, attr, None)
        if v is not None:
            setattr(cfg, key, v)
    cfg.validate()
    return cfg


def _write(data: bytes, name: str, out_dir: Path | None) -> None:
    if out_dir is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / name).write_bytes(data)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    out = getattr(args, "out_dir", None) or os.environ.get(OUT_DIR_ENV)
    out_dir = Path(out) if out else None
    fmt = getattr(args, "format", None) or "csv"
    try:
        cfg = load_config(args)
        fmt = cfg.format
    except (CuspZetaError, OSError) as e:
        rec = Record(args.command, columns=["error", "message"], rows=[[type(e).__name__, str(e)]])
        _write(emit(rec, fmt), _fname(args.command, fmt), out_dir)
        return 2
    try:
        rec = COMMANDS[args.command](cfg, args)
    except (CuspZetaError, OSError, ArithmeticError) as e:
        name = f"{args.command} {args.kind}" if getattr(args, "kind", None) else args.command
        rec = Record(name, cfg.echo(), ["error", "message"], [[type(e).__name__, str(e)]])
        _write(emit(rec, fmt), _fname(name, fmt), out_dir)
        return 1
    rec.inputs = cfg.echo() + rec.inputs
    if getattr(args, "plot", False):
        png = (out_dir or Path(".")) / (rec.command.replace(" ", "_") + ".png")
        if out_dir is not None:
            out_dir.mkdir(parents=True, exist_ok=True)
        if plot_record(rec, png) is not None:
            rec.meta.append(("plot", png.name))
    _write(emit(rec, fmt), _fname(rec.command, fmt), out_dir)
    failed = rec.command == "validate" and not all(r[3] for r in rec.rows)
    return 1 if failed else 0


def _fname(command: str, fmt: str) -> str:
    return command.replace(" ", "_") + (".csv" if fmt == "csv" else ".txt")


if __name__ == "__main__":
    sys.exit(main())
