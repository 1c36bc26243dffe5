"""Experiment configuration, one TOML file per run.

Example::

    [field]
    polynomial = "-1,-1,1"     # coefficients, constant term first
    root = 0                   # index by descending modulus, then argument

    [instance]
    A = [["-1"], ["2"]]        # A_0 .. A_D as coordinate lists in the power basis
    pi = ["2"]

    [digits]
    source = "greedy"          # or "file"
    xi = ["1/2"]               # greedy only
    # path = "digits.txt"      # file only, relative to the config file
    # T = 1                    # optional digit bound override

    [run]
    n_max = 10000
    y_max = 10000              # horizon of the Y_R tables
    schedule = [100, 1000, 10000]
"""
import sys
from dataclasses import dataclass, field
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import InputError


@dataclass
class RunConfig:
    polynomial: str
    root: int = 0
    A: list = field(default_factory=list)
    pi: list = field(default_factory=lambda: ["1"])
    source: str = "greedy"
    xi: list | None = None
    path: Path | None = None
    T: int | None = None
    n_max: int = 10_000
    y_max: int | None = None
    schedule: list = field(default_factory=list)
    origin: Path | None = None

    @property
    def D(self):
        return len(self.A) - 1

    def echo(self):
        return {
            "polynomial": self.polynomial,
            "root": self.root,
            "A": self.A,
            "pi": self.pi,
            "digits": {
                "source": self.source,
                "xi": self.xi,
                "path": str(self.path) if self.path else None,
                "T": self.T,
            },
            "n_max": self.n_max,
            "y_max": self.y_max,
            "schedule": self.schedule,
        }


def _coords(v, what):
    if isinstance(v, (int, str)):
        return [str(v)]
    if isinstance(v, list) and v and all(isinstance(c, (int, str)) for c in v):
        return [str(c) for c in v]
    raise InputError(f"{what}: expected a coordinate list, got {v!r}")


def _int(v, what, minimum=0):
    if not isinstance(v, int) or isinstance(v, bool) or v < minimum:
        raise InputError(f"{what}: expected an integer >= {minimum}, got {v!r}")
    return v


def load_config(path):
    path = Path(path)
    try:
        raw = tomllib.loads(path.read_text())
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}") from None
    except tomllib.TOMLDecodeError as exc:
        raise InputError(f"{path}: {exc}") from None
    return config_from_dict(raw, origin=path)


def config_from_dict(raw, origin=None):
    f = raw.get("field", {})
    inst = raw.get("instance", {})
    dig = raw.get("digits", {})
    run = raw.get("run", {})
    if "polynomial" not in f:
        raise InputError("[field] polynomial is required")
    A = inst.get("A")
    if not isinstance(A, list) or len(A) < 2:
        raise InputError("[instance] A must list A_0 .. A_D with D >= 1")
    cfg = RunConfig(
        polynomial=str(f["polynomial"]),
        root=_int(f.get("root", 0), "[field] root"),
        A=[_coords(a, f"[instance] A[{k}]") for k, a in enumerate(A)],
        pi=_coords(inst.get("pi", ["1"]), "[instance] pi"),
        source=dig.get("source", "greedy"),
        n_max=_int(run.get("n_max", 10_000), "[run] n_max", 1),
        origin=origin,
    )
    if cfg.source == "greedy":
        if "xi" not in dig:
            raise InputError("[digits] xi is required for greedy digits")
        cfg.xi = _coords(dig["xi"], "[digits] xi")
    elif cfg.source == "file":
        if "path" not in dig:
            raise InputError("[digits] path is required for file digits")
        p = Path(dig["path"])
        if not p.is_absolute() and origin is not None:
            p = Path(origin).parent / p
        cfg.path = p
    else:
        raise InputError(f"[digits] source must be 'greedy' or 'file', got {cfg.source!r}")
    if "T" in dig:
        cfg.T = _int(dig["T"], "[digits] T", 1)
    if "y_max" in run:
        cfg.y_max = _int(run["y_max"], "[run] y_max", 1)
    sched = run.get("schedule", [])
    cfg.schedule = [_int(n, "[run] schedule", 2) for n in sched]
    return cfg
