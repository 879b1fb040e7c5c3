"""Surface descriptors, exact validation, derived geometry and the actions on H x C."""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any, Sequence

import jsonschema
import numpy as np

from .exact_linalg.intmat import IntMat, as_mat, det
from .exact_linalg.quadext import QuadExt
from .exact_linalg.spectral import SpectralError, eigen_data, s0_conditions, s0_numeric_eigen
from .fundamental_groups import GroupDescriptor, GroupElem, defining_relations
from .gamma_r import GammaRElem, mu_embed, shifted_offsets

SPLUS, SMINUS, S0 = "S+", "S-", "S0"

SAMPLE_W = (0.5j, 1j, 1 + 1j, -1 + 2j, 0.3 + 0.7j)
SAMPLE_Z = (0, 1, 1j, 1 - 1j, 2 + 0.5j)
SAMPLE_GRID = tuple((w, complex(z)) for w in SAMPLE_W for z in SAMPLE_Z)
DEFAULT_TOL = 1e-9


class SurfaceError(ValueError):
    """Base class for surface input problems."""


class SurfaceValidationError(SurfaceError):
    def __init__(self, errors: list[str]):
        super().__init__("; ".join(errors))
        self.errors = errors


@dataclass(frozen=True)
class SurfaceDescriptor:
    kind: str
    N: IntMat | None = None
    M: IntMat | None = None
    p: int | None = None
    q: int | None = None
    r: int | None = None
    t: tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))
    sign: int = 1
    conj: bool = False

    def __post_init__(self) -> None:
        if self.N is not None:
            object.__setattr__(self, "N", as_mat(self.N))
        if self.M is not None:
            object.__setattr__(self, "M", as_mat(self.M))
        object.__setattr__(self, "t", (Fraction(self.t[0]), Fraction(self.t[1])))

    @property
    def matrix(self) -> IntMat:
        return self.M if self.kind == S0 else self.N

    def sort_key(self) -> tuple:
        mat = self.matrix or ()
        return (self.kind, mat, self.p or 0, self.q or 0, self.r or 0, self.sign,
                self.conj, self.t)

    def group(self) -> GroupDescriptor:
        validate(self)
        if self.kind == S0:
            return GroupDescriptor(S0, self.M)
        return GroupDescriptor(self.kind, self.N, self.p, self.q, self.r)

    def to_json(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind}
        if self.kind == S0:
            out["M"] = [list(row) for row in self.M]
            out["conj"] = self.conj
        else:
            out["N"] = [list(row) for row in self.N]
            out.update(p=self.p, q=self.q, r=self.r)
            if self.kind == SPLUS and any(self.t):
                out["t"] = [_num_json(x) for x in self.t]
        out["sign"] = self.sign
        return out


def _num_json(x: Fraction):
    return int(x) if x.denominator == 1 else float(x)


def splus(n, p: int, q: int, r: int, sign: int = 1, t=(0, 0)) -> SurfaceDescriptor:
    return SurfaceDescriptor(SPLUS, N=n, p=p, q=q, r=r, sign=sign, t=t)


def sminus(n, p: int, q: int, r: int, sign: int = 1) -> SurfaceDescriptor:
    return SurfaceDescriptor(SMINUS, N=n, p=p, q=q, r=r, sign=sign)


def s0(m, conj: bool = False, sign: int = 1) -> SurfaceDescriptor:
    return SurfaceDescriptor(S0, M=m, sign=sign, conj=conj)


# -- validation ---------------------------------------------------------------

def validation_errors(desc: SurfaceDescriptor) -> list[str]:
    """Every violated defining condition, as a list of messages (empty = valid)."""
    errors: list[str] = []
    if desc.kind not in (S0, SPLUS, SMINUS):
        return [f"kind must be one of S0, S+, S- (got {desc.kind!r})"]
    if desc.sign not in (1, -1):
        errors.append("sign must be +1 or -1")
    if desc.kind == S0:
        if desc.M is None:
            return errors + ["S0 needs a 3x3 matrix M"]
        if desc.N is not None or desc.p is not None or desc.q is not None or desc.r is not None:
            errors.append("S0 takes only M (no N, p, q, r)")
        if any(desc.t):
            errors.append("t only applies to S+")
        return errors + s0_conditions(desc.M)
    if desc.N is None or len(desc.N) != 2 or any(len(row) != 2 for row in desc.N):
        return errors + [f"{desc.kind} needs a 2x2 integer matrix N"]
    if desc.M is not None:
        errors.append(f"{desc.kind} takes N, not M")
    if desc.conj:
        errors.append("conj only applies to S0")
    for name in ("p", "q", "r"):
        if not isinstance(getattr(desc, name), int):
            errors.append(f"{name} must be an integer")
    if desc.r == 0:
        errors.append("r ≠ 0 (r must be nonzero)")
    if desc.kind == SMINUS and any(desc.t):
        errors.append("t only applies to S+")
    try:
        eigen_data(desc.N, desc.kind)
    except SpectralError as exc:
        errors.append(str(exc))
    return errors


def validate(desc: SurfaceDescriptor) -> SurfaceDescriptor:
    errors = validation_errors(desc)
    if errors:
        raise SurfaceValidationError(errors)
    return desc


def is_valid(desc: SurfaceDescriptor) -> bool:
    return not validation_errors(desc)


# -- exact geometry -----------------------------------------------------------

E_PRINTED = "printed"
E_SYMMETRIC = "symmetric"


def _solve2(m: IntMat, rhs: Sequence[QuadExt]) -> tuple[QuadExt, QuadExt]:
    d = det(m)
    if d == 0:
        raise ArithmeticError("singular system")
    (a, b), (c, e) = m
    return (rhs[0] * e - rhs[1] * b) / d, (rhs[1] * a - rhs[0] * c) / d


@dataclass(frozen=True)
class DerivedGeometry:
    """Exact constants of an S+ or S- surface in Q(sqrt(D))."""

    kind: str
    N: IntMat
    p: int
    q: int
    r: int
    t: tuple[Fraction, Fraction]
    alpha: QuadExt
    a: tuple[QuadExt, QuadExt]
    b: tuple[QuadExt, QuadExt]
    theta: QuadExt
    e: tuple[QuadExt, QuadExt]
    c: tuple[QuadExt, QuadExt]
    c_tilde: tuple[QuadExt, QuadExt]
    p_tilde: tuple[Fraction, Fraction]

    @property
    def D(self) -> int:
        return self.alpha.D

    def numeric(self) -> NumericGeometry:
        return NumericGeometry(
            kind=self.kind, r=self.r, alpha=float(self.alpha),
            a=np.array([float(x) for x in self.a]), b=np.array([float(x) for x in self.b]),
            theta=float(self.theta), c_tilde=np.array([float(x) for x in self.c_tilde]),
            t=complex(float(self.t[0]), float(self.t[1])))

    def identities(self) -> dict[str, bool]:
        """Exact checks of the defining system for c and of its shifted form."""
        sgn = -1 if self.kind == SPLUS else 1
        n, th = self.N, self.theta / self.r
        out = {}
        pq = (self.p, self.q)
        out["defining"] = all(
            n[i][0] * self.c[0] + n[i][1] * self.c[1] + sgn * self.c[i] + self.e[i] - th * pq[i] == 0
            for i in range(2))
        out["shifted"] = all(
            n[i][0] * self.c_tilde[0] + n[i][1] * self.c_tilde[1] + sgn * self.c_tilde[i]
            - th * self.p_tilde[i] == 0 for i in range(2))
        out["theta_nonzero"] = bool(self.theta)
        return out


def e_terms(n: IntMat, a, b, variant: str = E_PRINTED) -> tuple[QuadExt, QuadExt]:
    out = []
    for i in range(2):
        ni1, ni2 = n[i]
        val = (Fraction(ni1 * (ni1 - 1), 2) * a[0] * b[0]
               + Fraction(ni2 * (ni2 - 1), 2) * a[1] * b[1])
        if variant == E_PRINTED:
            val = val + ni1 * ni2 * b[0] * a[1]
        elif variant == E_SYMMETRIC:
            val = val + Fraction(ni1 * ni2, 2) * (b[0] * a[1] + a[0] * b[1])
        else:
            raise ValueError(f"unknown e variant {variant!r}")
        out.append(val)
    return out[0], out[1]


def derive_geometry(desc: SurfaceDescriptor, a_scale=1, b_scale=1,
                    e_variant: str = E_PRINTED) -> DerivedGeometry:
    """Eigen-data, theta, e and c for a valid S+/S- surface, all exact.

    ``a_scale`` and ``b_scale`` (positive, rational or in the same quadratic
    field) rescale the canonical eigenvectors; the orientation sign of the
    descriptor flips ``a``.
    """
    validate(desc)
    if desc.kind == S0:
        raise ValueError("exact geometry is only defined for S+ and S-")
    alpha, a, b = eigen_data(desc.N, desc.kind)
    sa = QuadExt(0, 0, alpha.D) + a_scale
    sb = QuadExt(0, 0, alpha.D) + b_scale
    if sa.sign() <= 0 or sb.sign() <= 0:
        raise ValueError("eigenvector scales must be positive")
    sa = sa * desc.sign
    a = (a[0] * sa, a[1] * sa)
    b = (b[0] * sb, b[1] * sb)
    theta = a[0] * b[1] - a[1] * b[0]
    n, r = desc.N, desc.r
    e = e_terms(n, a, b, e_variant)
    sgn = -1 if desc.kind == SPLUS else 1
    shift = ((n[0][0] + sgn, n[0][1]), (n[1][0], n[1][1] + sgn))
    rhs = (theta / r * desc.p - e[0], theta / r * desc.q - e[1])
    c = _solve2(shift, rhs)
    c_tilde = (c[0] - a[0] * b[0] / 2, c[1] - a[1] * b[1] / 2)
    pt2 = shifted_offsets(n, desc.p, desc.q, r)
    geom = DerivedGeometry(desc.kind, n, desc.p, desc.q, r, desc.t, alpha, a, b, theta, e, c,
                           c_tilde, (Fraction(pt2[0], 2), Fraction(pt2[1], 2)))
    if not geom.identities()["defining"]:
        raise ArithmeticError("exact solve for c failed its own check")
    return geom


# -- numeric evaluation -------------------------------------------------------

@dataclass(frozen=True)
class NumericGeometry:
    """Floating constants used to evaluate the maps; derived from exact data."""

    kind: str
    r: int
    alpha: float
    a: np.ndarray
    b: np.ndarray
    theta: float
    c_tilde: np.ndarray
    t: complex = 0j

    def perturbed_c(self, delta: float, index: int = 0) -> NumericGeometry:
        ct = self.c_tilde.copy()
        ct[index] += delta
        return replace(self, c_tilde=ct)


@dataclass(frozen=True)
class S0Geometry:
    alpha: float
    beta: complex
    a: np.ndarray
    b: np.ndarray
    kind: str = S0


def s0_geometry(desc: SurfaceDescriptor) -> S0Geometry:
    validate(desc)
    alpha, beta, a, b = s0_numeric_eigen(desc.M)
    if desc.conj:
        beta, b = beta.conjugate(), b.conj()
    return S0Geometry(alpha, beta, a * desc.sign, b)


def geometry(desc: SurfaceDescriptor):
    """Numeric geometry for any kind (exact data converted to floats for S+/S-)."""
    if desc.kind == S0:
        return s0_geometry(desc)
    return derive_geometry(desc).numeric()


def eval_gamma_action(geom: NumericGeometry, g: GammaRElem, w: complex, z: complex) -> tuple[complex, complex]:
    """(w, z) -> (w + za, z + (zb) w + z.c~ - (theta/r) y + (za)(zb)/2)."""
    if isinstance(geom, DerivedGeometry):
        geom = geom.numeric()
    za = g.zeta[0] * geom.a[0] + g.zeta[1] * geom.a[1]
    zb = g.zeta[0] * geom.b[0] + g.zeta[1] * geom.b[1]
    zc = g.zeta[0] * geom.c_tilde[0] + g.zeta[1] * geom.c_tilde[1]
    y = g.y2 / 2
    return w + za, z + zb * w + zc - geom.theta / geom.r * y + 0.5 * za * zb


def _g0(geom, w: complex, z: complex, power: int) -> tuple[complex, complex]:
    if geom.kind == S0:
        return geom.alpha ** power * w, geom.beta ** power * z
    if geom.kind == SPLUS:
        return geom.alpha ** power * w, z + power * geom.t
    return geom.alpha ** power * w, (-1) ** (power % 2) * z


def eval_element(geom, elem: GroupElem, w: complex, z: complex) -> tuple[complex, complex]:
    """The map of g0^n0 * gamma: gamma first, then g0^n0."""
    if isinstance(geom, DerivedGeometry):
        geom = geom.numeric()
    if geom.kind == S0:
        lam = elem.gamma
        w = w + sum(lam[i] * geom.a[i] for i in range(3))
        z = z + sum(lam[i] * geom.b[i] for i in range(3))
    else:
        w, z = eval_gamma_action(geom, elem.gamma, w, z)
    return _g0(geom, w, z, elem.n0)


def eval_generator(geom, index: int, w: complex, z: complex, power: int = 1) -> tuple[complex, complex]:
    if isinstance(geom, SurfaceDescriptor):
        geom = geometry(geom)
    if isinstance(geom, DerivedGeometry):
        geom = geom.numeric()
    if index == 0:
        return _g0(geom, w, z, power)
    if geom.kind == S0:
        return w + power * geom.a[index - 1], z + power * geom.b[index - 1]
    exps = [0, 0, 0]
    exps[index - 1] = power
    return eval_gamma_action(geom, mu_embed(*exps, geom.r), w, z)


def eval_word(geom, word: Sequence[tuple[int, int]], w: complex, z: complex) -> tuple[complex, complex]:
    """Apply the product g_{i1}^{e1} ... g_{ik}^{ek} as a map (rightmost factor first)."""
    for idx, e in reversed(word):
        w, z = eval_generator(geom, idx, w, z, e)
    return w, z


def numeric_relation_check(desc: SurfaceDescriptor, tol: float = DEFAULT_TOL, geom=None) -> list[dict]:
    """Both sides of each defining relation as maps, compared on the sample grid."""
    geom = geometry(desc) if geom is None else geom
    if isinstance(geom, DerivedGeometry):
        geom = geom.numeric()
    report = []
    for rel in defining_relations(desc.group()):
        worst = 0.0
        for w, z in SAMPLE_GRID:
            lw, lz = eval_word(geom, rel.lhs, w, z)
            rw, rz = eval_word(geom, rel.rhs, w, z)
            worst = max(worst, abs(lw - rw), abs(lz - rz))
        report.append({"relation": rel.name, "max_deviation": float(worst), "passed": bool(worst < tol)})
    return report


def canonicalize(desc: SurfaceDescriptor) -> tuple[SurfaceDescriptor, int]:
    """Drop t (irrelevant up to deformation) and report the orientation sign."""
    validate(desc)
    return replace(desc, t=(Fraction(0), Fraction(0))), desc.sign


# -- JSON ---------------------------------------------------------------------

_INT = {"type": "integer"}
_NUM = {"type": "number"}

SURFACE_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["kind", "sign"],
    "properties": {
        "kind": {"enum": [S0, SPLUS, SMINUS]},
        "M": {"type": "array", "minItems": 3, "maxItems": 3,
              "items": {"type": "array", "minItems": 3, "maxItems": 3, "items": _INT}},
        "N": {"type": "array", "minItems": 2, "maxItems": 2,
              "items": {"type": "array", "minItems": 2, "maxItems": 2, "items": _INT}},
        "p": _INT,
        "q": _INT,
        "r": _INT,
        "t": {"type": "array", "minItems": 2, "maxItems": 2, "items": _NUM},
        "sign": {"enum": [1, -1]},
        "conj": {"type": "boolean"},
    },
    "allOf": [
        {"if": {"required": ["kind"], "properties": {"kind": {"const": S0}}},
         "then": {"required": ["M"], "not": {"anyOf": [{"required": [k]} for k in ("N", "p", "q", "r", "t")]}}},
        {"if": {"required": ["kind"], "properties": {"kind": {"enum": [SPLUS, SMINUS]}}},
         "then": {"required": ["N", "p", "q", "r"], "not": {"anyOf": [{"required": [k]} for k in ("M", "conj")]}}},
        {"if": {"required": ["kind"], "properties": {"kind": {"const": SMINUS}}},
         "then": {"not": {"required": ["t"]}}},
    ],
}


class SurfaceFormatError(SurfaceError):
    """Malformed JSON text."""


class SurfaceSchemaError(SurfaceError):
    def __init__(self, errors: list[tuple[str, str]]):
        super().__init__("; ".join(f"{f}: {m}" for f, m in errors))
        self.errors = errors


def _to_fraction(x) -> Fraction:
    return Fraction(x) if isinstance(x, int) else Fraction(str(x))


def descriptor_from_json(obj: Any) -> SurfaceDescriptor:
    """Schema-check and validate a decoded JSON object."""
    validator = jsonschema.Draft202012Validator(SURFACE_SCHEMA)
    problems = sorted(validator.iter_errors(obj), key=lambda e: list(e.absolute_path))
    if problems:
        raise SurfaceSchemaError([("/".join(map(str, e.absolute_path)) or "<root>", e.message)
                                  for e in problems])
    t = tuple(_to_fraction(x) for x in obj.get("t", (0, 0)))
    desc = SurfaceDescriptor(kind=obj["kind"], N=obj.get("N"), M=obj.get("M"), p=obj.get("p"),
                             q=obj.get("q"), r=obj.get("r"), t=t, sign=obj["sign"],
                             conj=obj.get("conj", False))
    return validate(desc)


def descriptor_from_text(text: str) -> SurfaceDescriptor:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SurfaceFormatError(f"malformed JSON: {exc}") from exc
    return descriptor_from_json(obj)


def parse_surface_file(path) -> SurfaceDescriptor:
    with open(path, encoding="utf-8") as fh:
        return descriptor_from_text(fh.read())
