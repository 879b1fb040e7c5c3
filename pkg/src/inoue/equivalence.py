"""Homotopy-equivalence deciders, explicit biholomorphisms and deformation representatives."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterator

from .exact_linalg.conjugacy import (DEFAULT_CONJUGATOR_BOUND, _box, centralizer_generator,
                                     gl2z_conjugator)
from .exact_linalg.intmat import (IntMat, as_mat, charpoly2, charpoly3, det, flatten, identity,
                                  inverse_unimodular, mat_mul, mat_scale, mat_vec,
                                  max_norm)
from .exact_linalg.lattice import (LatticeBasis, commutant_lattice, congruence_lattice,
                                   lattice_membership, reduce_matrix_basis, shifted)
from .exact_linalg.quadext import QuadExt
from .fundamental_groups import (GroupIsomorphism, extend_isomorphism, generator,
                                 isomorphism_conditions)
from .gamma_r import shifted_offsets
from .surfaces import (S0, SAMPLE_GRID, SMINUS, SPLUS, DerivedGeometry, SurfaceDescriptor,
                       derive_geometry, eval_element, eval_generator, validate)

J = ((0, 1), (1, 0))
DEFAULT_ETA_BOUND = 8
DEFAULT_S0_BOUND = 4
VERIFY_TOL = 1e-9


class Status(str, enum.Enum):
    EQUIVALENT = "Equivalent"
    NOT_EQUIVALENT = "NotEquivalent"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class EquivWitness:
    """K, delta, eps and the coefficients (k13, k23, u, v) of the lattice condition.

    For S0 the matrix is the GL(3,Z) conjugator T and ``coeffs`` is empty.
    """

    kind: str
    K: IntMat
    delta: int
    eps: int
    coeffs: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {"K": [list(row) for row in self.K], "delta": self.delta, "eps": self.eps,
                "coeffs": list(self.coeffs)}


@dataclass(frozen=True)
class Verdict:
    status: Status
    witness: EquivWitness | None = None
    obstruction: str = ""
    bound: int | None = None
    notes: tuple[str, ...] = ()

    @property
    def equivalent(self) -> bool:
        return self.status is Status.EQUIVALENT

    def to_json(self) -> dict:
        out: dict = {"status": self.status.value}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.obstruction:
            out["obstruction"] = self.obstruction
        if self.bound is not None:
            out["bound"] = self.bound
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _scale(k, v):
    return tuple(k * x for x in v)


def _inverse_power(n: IntMat, eps: int) -> IntMat:
    return n if eps == 1 else inverse_unimodular(n)


# -- S+ / S- deciders ----------------------------------------------------------

def _lattice_sign(kind: str) -> int:
    # S+ uses r Z^2 + (N' - I) Z^2, S- uses r Z^2 + (N' + I) Z^2
    return -1 if kind == SPLUS else 1


def verify_witness(s: SurfaceDescriptor, s_prime: SurfaceDescriptor, w: EquivWitness) -> list[str]:
    """Exactly re-check the equivalence conditions; returns the violated ones."""
    if s.kind != s_prime.kind or w.kind != s.kind:
        return ["kinds differ"]
    errors = []
    k = as_mat(w.K)
    if s.kind == S0:
        if det(k) not in (1, -1):
            errors.append("T in GL(3,Z)")
        target = _inverse_power(s.M, w.eps)
        if mat_mul(k, target) != mat_mul(s_prime.M, k):
            errors.append("M' = T M^eps T^-1")
        return errors
    if det(k) not in (1, -1):
        errors.append("K in GL(2,Z)")
        return errors
    if w.delta not in (1, -1) or w.eps not in (1, -1):
        errors.append("delta, eps in {1, -1}")
    if s.kind == SMINUS and w.eps != 1:
        errors.append("eps = 1 for S-")
    if s_prime.r != w.delta * det(k) * s.r:
        errors.append("r' = delta det(K) r")
    if mat_mul(k, _inverse_power(s.N, w.eps)) != mat_mul(s_prime.N, k):
        errors.append("N' = K N^eps K^-1")
    lhs = _sub(_scale(w.delta, (s_prime.p, s_prime.q)), _scale(w.eps, mat_vec(k, (s.p, s.q))))
    if len(w.coeffs) != 4:
        errors.append("lattice coefficients missing")
    else:
        k13, k23, u, v = w.coeffs
        shift = shifted(s_prime.N, _lattice_sign(s.kind))
        rhs = tuple(s.r * kk + x for kk, x in zip((k13, k23), mat_vec(shift, (u, v))))
        if lhs != rhs:
            errors.append("delta (p', q') - eps K (p, q) in r Z^2 + (N' -+ I) Z^2")
    return errors


def _lattice(s: SurfaceDescriptor, s_prime: SurfaceDescriptor) -> LatticeBasis:
    return congruence_lattice(s.r, shifted(s_prime.N, _lattice_sign(s.kind)))


def _orbit_witnesses(s: SurfaceDescriptor, s_prime: SurfaceDescriptor, eps: int, det_sign: int,
                     k0: IntMat, lattice: LatticeBasis) -> Iterator[EquivWitness]:
    """Witnesses among +-C^k K0 satisfying the lattice condition.

    Every conjugator of the given determinant is +-C^k K0. C preserves the
    lattice, so C^k K0 (p, q) mod L is periodic; two periods are walked so that
    both parities of k (which may differ in orientation) are represented.
    """
    delta = s_prime.r // (det_sign * s.r)
    target = _scale(delta, (s_prime.p, s_prime.q))
    c = centralizer_generator(s_prime.N)
    k0 = _shortest_in_orbit(k0, c)
    pq = (s.p, s.q)
    start = lattice.reduce(mat_vec(k0, pq))
    k, step, laps, seen = k0, 0, 0, set()
    while laps < 2:
        x = mat_vec(k, pq)
        for sgn in (1, -1):
            diff = _sub(target, _scale(eps * sgn, x))
            key = (sgn, lattice.reduce(x), step % 2)
            if key not in seen and diff in lattice:
                seen.add(key)
                coeffs = lattice_membership(diff, lattice)
                yield EquivWitness(s.kind, mat_scale(sgn, k), delta, eps, tuple(coeffs))
        k, step = mat_mul(c, k), step + 1
        if lattice.reduce(mat_vec(k, pq)) == start:
            laps += 1


def _shortest_in_orbit(k: IntMat, c: IntMat) -> IntMat:
    """Walk K -> C^{+-1} K while the max-norm drops."""
    c_inv = inverse_unimodular(c)
    while True:
        best = min((mat_mul(c, k), mat_mul(c_inv, k)), key=max_norm)
        if max_norm(best) >= max_norm(k):
            return k
        k = best


def witness_key(w: EquivWitness):
    """Preference order: eps = 1 first, then small and positive K."""
    return (w.eps != 1, w.delta != 1, max_norm(w.K), sum(1 for x in flatten(w.K) if x < 0),
            -sum(w.K[i][i] for i in range(len(w.K))), flatten(w.K))


def iter_witnesses(s: SurfaceDescriptor, s_prime: SurfaceDescriptor,
                   bound: int = DEFAULT_CONJUGATOR_BOUND) -> tuple[list[EquivWitness], bool]:
    """All orbit witnesses for S+/S- (eps = 1 first), and whether the search was complete."""
    complete = True
    found: list[EquivWitness] = []
    if abs(s.r) != abs(s_prime.r) or charpoly2(s.N) != charpoly2(s_prime.N):
        return found, True
    lattice = _lattice(s, s_prime)
    for eps in ((1, -1) if s.kind == SPLUS else (1,)):
        n_eps = _inverse_power(s.N, eps)
        for det_sign in (1, -1):
            res = gl2z_conjugator(n_eps, s_prime.N, det_sign, bound)
            if not res.found:
                complete = complete and res.certain
                continue
            found.extend(_orbit_witnesses(s, s_prime, eps, det_sign, res.matrix, lattice))
    return sorted(found, key=witness_key), complete


def _decide_2x2(s: SurfaceDescriptor, s_prime: SurfaceDescriptor, kind: str, bound: int) -> Verdict:
    for x in (s, s_prime):
        validate(x)
        if x.kind != kind:
            raise ValueError(f"expected two {kind} surfaces, got {s.kind} and {s_prime.kind}")
    if abs(s.r) != abs(s_prime.r):
        return Verdict(Status.NOT_EQUIVALENT, obstruction="r-magnitude")
    if charpoly2(s.N) != charpoly2(s_prime.N):
        return Verdict(Status.NOT_EQUIVALENT, obstruction="characteristic polynomial")
    witnesses, complete = iter_witnesses(s, s_prime, bound)
    if witnesses:
        w = witnesses[0]
        bad = verify_witness(s, s_prime, w)
        if bad:
            raise ArithmeticError(f"witness failed re-verification: {bad}")
        return Verdict(Status.EQUIVALENT, witness=w)
    if not complete:
        return Verdict(Status.UNKNOWN, obstruction="conjugator search bound exhausted", bound=bound)
    return Verdict(Status.NOT_EQUIVALENT, obstruction="lattice-orbit")


def decide_homotopy_splus(s: SurfaceDescriptor, s_prime: SurfaceDescriptor,
                          bound: int = DEFAULT_CONJUGATOR_BOUND) -> Verdict:
    return _decide_2x2(s, s_prime, SPLUS, bound)


def decide_homotopy_sminus(s: SurfaceDescriptor, s_prime: SurfaceDescriptor,
                           bound: int = DEFAULT_CONJUGATOR_BOUND) -> Verdict:
    return _decide_2x2(s, s_prime, SMINUS, bound)


S0_NOTE = "S0 criterion is GL(3,Z)-conjugacy of M or M^-1 (library convention)"


def gl3z_conjugator(m: IntMat, m_prime: IntMat, bound: int = DEFAULT_S0_BOUND) -> IntMat | None:
    """Bounded search for T in GL(3,Z) with T m = m' T over a reduced commutant basis."""
    if as_mat(m) == as_mat(m_prime):
        return identity(len(m))
    basis = reduce_matrix_basis(commutant_lattice(m, m_prime))
    if not basis:
        return None
    ranges = [range(-bound, bound + 1)] * len(basis)
    coeffs = sorted(itertools.product(*ranges), key=lambda c: (max(map(abs, c)), sum(map(abs, c)), c))
    size = len(m)
    for c in coeffs:
        t = tuple(tuple(sum(ci * b[i][j] for ci, b in zip(c, basis)) for j in range(size))
                  for i in range(size))
        if det(t) in (1, -1):
            return t
    return None


def decide_homotopy_s0(s: SurfaceDescriptor, s_prime: SurfaceDescriptor,
                       bound: int = DEFAULT_S0_BOUND) -> Verdict:
    for x in (s, s_prime):
        validate(x)
        if x.kind != S0:
            raise ValueError("expected two S0 surfaces")
    notes = (S0_NOTE,)
    target = charpoly3(s_prime.M)
    candidates = [eps for eps in (1, -1) if charpoly3(_inverse_power(s.M, eps)) == target]
    if not candidates:
        return Verdict(Status.NOT_EQUIVALENT, obstruction="characteristic polynomial", notes=notes)
    for eps in candidates:
        t = gl3z_conjugator(_inverse_power(s.M, eps), s_prime.M, bound)
        if t is not None:
            w = EquivWitness(S0, t, 1, eps)
            if verify_witness(s, s_prime, w):
                raise ArithmeticError("S0 witness failed re-verification")
            return Verdict(Status.EQUIVALENT, witness=w, notes=notes)
    return Verdict(Status.UNKNOWN, obstruction="GL(3,Z) conjugator search bound exhausted",
                   bound=bound, notes=notes)


def decide_homotopy(s: SurfaceDescriptor, s_prime: SurfaceDescriptor,
                    bound: int | None = None) -> Verdict:
    if s.kind != s_prime.kind:
        validate(s)
        validate(s_prime)
        return Verdict(Status.NOT_EQUIVALENT, obstruction="kind")
    if s.kind == S0:
        return decide_homotopy_s0(s, s_prime, bound or DEFAULT_S0_BOUND)
    return _decide_2x2(s, s_prime, s.kind, bound or DEFAULT_CONJUGATOR_BOUND)


# -- biholomorphisms -------------------------------------------------------------

@dataclass(frozen=True)
class BiholMap:
    """(w, z) -> (c w + d, e w + f z + g) from the source surface's cover to the target's."""

    kind: str
    c: QuadExt
    d: QuadExt
    e: QuadExt
    f: QuadExt
    g: QuadExt
    source: SurfaceDescriptor
    target: SurfaceDescriptor
    K: IntMat
    v2: tuple[int, int]
    eta: tuple[int, int]
    source_t: tuple[QuadExt, QuadExt] | None = None
    max_deviation: float = 0.0

    def __call__(self, w: complex, z: complex) -> tuple[complex, complex]:
        c, d, e, f, g = (float(x) for x in (self.c, self.d, self.e, self.f, self.g))
        return c * w + d, e * w + f * z + g

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "coefficients": {k: str(getattr(self, k)) for k in "cdefg"},
            "coefficients_float": {k: float(getattr(self, k)) for k in "cdefg"},
            "K": [list(row) for row in self.K],
            "v": [str(Fraction(x, 2)) for x in self.v2],
            "eta": list(self.eta),
            "source_t": None if self.source_t is None else [str(x) for x in self.source_t],
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "max_deviation": float(self.max_deviation),
        }


class BiholVerificationError(ArithmeticError):
    """A constructed map failed to conjugate the generator actions."""


def r_flip_twin(s: SurfaceDescriptor) -> SurfaceDescriptor:
    """The same group presented with (p, q, r) -> (-p, -q, -r); g3 becomes g3^-1."""
    return replace(s, p=-s.p, q=-s.q, r=-s.r)


def _solve_v2(shift: IntMat, rhs2: tuple[int, int]) -> tuple[int, int] | None:
    d = det(shift)
    (a, b), (c, e) = shift
    x = (Fraction(rhs2[0] * e - rhs2[1] * b, d), Fraction(rhs2[1] * a - rhs2[0] * c, d))
    if any(v.denominator != 1 for v in x):
        return None
    return int(x[0]), int(x[1])


def _eta_candidates(s, s_prime, k, bound) -> Iterator[tuple[int, int]]:
    yield from _box(bound)
    # exact fallback: solve the congruence for eta directly
    sgn = _lattice_sign(s.kind)
    shift = shifted(s_prime.N, sgn)
    r = s.r
    a2 = _sub(mat_vec(k, shifted_offsets(s.N, s.p, s.q, r)),
              _scale(det(k), shifted_offsets(s_prime.N, s_prime.p, s_prime.q, r)))
    kk = (r * k[0][0] * k[0][1], r * k[1][0] * k[1][1])
    b = _sub(a2, mat_vec(shift, kk))
    if any(x % 2 for x in b):
        return
    sol = lattice_membership(tuple(x // 2 for x in b), congruence_lattice(r, shift))
    if sol is None:
        return
    wv = sol[:2]
    # S+: b/2 = (N'-I) u - r K xi;  S-: b/2 = (N'+I) u + r K xi, with xi = (-l2, l1)
    xi = mat_vec(inverse_unimodular(k), _scale(sgn, wv))
    yield xi[1], -xi[0]


def _find_lift(s, s_prime, k, eta_bound):
    """First eta (box order, then exact fallback) with an admissible doubled v."""
    sgn = _lattice_sign(s.kind)
    shift = shifted(s_prime.N, sgn)
    r = s.r
    pt = shifted_offsets(s.N, s.p, s.q, r)
    ptp = shifted_offsets(s_prime.N, s_prime.p, s_prime.q, r)
    base = _sub(mat_vec(k, pt), _scale(det(k), ptp))
    g_src, g_tgt = s_prime.group(), s.group()
    for l1, l2 in _eta_candidates(s, s_prime, k, eta_bound):
        extra = _scale(-sgn * 2 * r, mat_vec(k, (-l2, l1)))
        rhs = tuple(x + y for x, y in zip(base, extra))
        v2 = _solve_v2(shift, rhs)
        if v2 is None:
            continue
        if not isomorphism_conditions(k, v2, l1, l2, g_src, g_tgt):
            return (l1, l2), v2
    return None


def _eigen_ratio(u, v) -> QuadExt:
    """lambda with u == lambda * v (v a nonzero eigenvector)."""
    j = 0 if v[0] else 1
    lam = u[j] / v[j]
    if u[0] != lam * v[0] or u[1] != lam * v[1]:
        raise ArithmeticError("vectors are not proportional")
    return lam


def build_bihol(s: SurfaceDescriptor, s_prime: SurfaceDescriptor, witness: EquivWitness,
                eta_bound: int = DEFAULT_ETA_BOUND, geom: DerivedGeometry | None = None,
                geom_prime: DerivedGeometry | None = None) -> tuple[BiholMap, GroupIsomorphism] | None:
    """Explicit biholomorphism from the cover of S' to that of S realizing the witness.

    Returns None when no eta is found or the orientation does not match (c < 0).
    When ``delta * det K = -1`` S' is replaced by its r-flip twin first. For S+
    the source's t is replaced by the value the construction requires.
    """
    if s.kind not in (SPLUS, SMINUS) or s.kind != s_prime.kind:
        raise ValueError("biholomorphisms are built between two S+ or two S- surfaces")
    if witness.eps != 1:
        raise ValueError("the construction needs eps = 1")
    k = as_mat(witness.K)
    if s_prime.r == -s.r:
        s_prime = r_flip_twin(s_prime)
        witness = replace(witness, delta=-witness.delta)
    if s_prime.r != s.r:
        raise ValueError("the construction needs r' = +-r")
    geom = geom or derive_geometry(s)
    geom_prime = geom_prime or derive_geometry(s_prime)
    if geom_prime.r != s_prime.r:
        geom_prime = replace(geom_prime, r=s_prime.r, p=s_prime.p, q=s_prime.q)
    lift = _find_lift(s, s_prime, k, eta_bound)
    if lift is None:
        return None
    (l1, l2), v2 = lift
    alpha, a, b, th = geom.alpha, geom.a, geom.b, geom.theta
    ka = tuple(k[i][0] * a[0] + k[i][1] * a[1] for i in range(2))
    kb = tuple(k[i][0] * b[0] + k[i][1] * b[1] for i in range(2))
    c = _eigen_ratio(ka, geom_prime.a)
    if c.sign() <= 0:
        return None
    f = _eigen_ratio(tuple(c * x for x in kb), geom_prime.b)
    if f != det(k) * th / geom_prime.theta:
        raise ArithmeticError("f = det(K) theta / theta' failed")
    ea = l1 * a[0] + l2 * a[1]
    eb = l1 * b[0] + l2 * b[1]
    ec = l1 * geom.c_tilde[0] + l2 * geom.c_tilde[1]
    zero = QuadExt(0, 0, alpha.D)
    if s.kind == SPLUS:
        d = -alpha * ea / (alpha - 1)
        e = c * eb / (alpha - 1)
        g = zero
        rhs = -alpha / (alpha - 1) * ea * eb + ec + ea * eb / 2 - th * Fraction(l1 * l2, 2)
        # f t' - t = rhs, with f real: t' is fixed by the construction
        t_new = ((rhs + geom.t[0]) / f, (zero + geom.t[1]) / f)
        source = s_prime
        src_geom = replace(geom_prime, t=(t_new[0], t_new[1]))
    else:
        d = alpha * ea / (1 - alpha)
        e = -c * eb / (alpha + 1)
        g = (-d * eb - ec + th * Fraction(l1 * l2, 2)) / 2 - ea * eb / 4
        t_new = None
        source = s_prime
        src_geom = geom_prime
    iso = extend_isomorphism(k, v2, l1, l2, source.group(), s.group())
    bihol = BiholMap(s.kind, c, d, e, f, g, source, s, k, v2, (l1, l2), t_new)
    dev = verify_bihol(bihol, iso, geom, src_geom)
    if dev >= VERIFY_TOL:
        raise BiholVerificationError(f"generator conjugation deviates by {dev:.3g}")
    bihol = replace(bihol, max_deviation=dev)
    return bihol, iso


def verify_bihol(bihol: BiholMap, iso: GroupIsomorphism, geom: DerivedGeometry,
                 src_geom: DerivedGeometry) -> float:
    """max |phi(g'(x)) - rho(g')(phi(x))| over the four generators and the sample grid."""
    tgt, src = geom.numeric(), src_geom.numeric()
    worst = 0.0
    for i in range(4):
        image = iso(generator(i, iso.source))
        for w, z in SAMPLE_GRID:
            lw, lz = bihol(*eval_generator(src, i, w, z))
            rw, rz = eval_element(tgt, image, *bihol(w, z))
            worst = max(worst, abs(lw - rw), abs(lz - rz))
    return float(worst)


def build_bihol_splus(s, s_prime, witness, eta_bound=DEFAULT_ETA_BOUND, **kw):
    if s.kind != SPLUS:
        raise ValueError("expected S+ surfaces")
    return build_bihol(s, s_prime, witness, eta_bound, **kw)


def build_bihol_sminus(s, s_prime, witness, eta_bound=DEFAULT_ETA_BOUND, **kw):
    if s.kind != SMINUS:
        raise ValueError("expected S- surfaces")
    return build_bihol(s, s_prime, witness, eta_bound, **kw)


# -- representatives and deformation classes ---------------------------------------

@dataclass(frozen=True)
class Representative:
    label: dict
    surface: SurfaceDescriptor


def enumerate_representatives(s: SurfaceDescriptor, check: bool = True) -> list[Representative]:
    """Representatives every surface homotopy equivalent to ``s`` deforms to.

    S+: indexed by (d, delta, eps, +-) with N_rep = K N^eps K^-1 for K = J^((1-d)/2),
    r_rep = d delta r and (P, Q) the canonical residue of delta eps K (p, q).
    S-: the eps = 1 part. S0: the pair conj = False / True.
    """
    validate(s)
    if s.kind == S0:
        out = [Representative({"conj": cj}, replace(s, conj=cj, sign=1)) for cj in (False, True)]
    else:
        out = []
        seen = set()
        eps_values = (1, -1) if s.kind == SPLUS else (1,)
        for d, delta, eps, sign in itertools.product((1, -1), (1, -1), eps_values, (1, -1)):
            k = identity(2) if d == 1 else J
            n_rep = mat_mul(mat_mul(k, _inverse_power(s.N, eps)), inverse_unimodular(k))
            r_rep = d * delta * s.r
            lattice = congruence_lattice(r_rep, shifted(n_rep, _lattice_sign(s.kind)))
            pq = lattice.reduce(_scale(delta * eps, mat_vec(k, (s.p, s.q))))
            rep = SurfaceDescriptor(s.kind, N=n_rep, p=pq[0], q=pq[1], r=r_rep, sign=sign)
            if rep in seen:
                continue
            seen.add(rep)
            label = {"d": d, "delta": delta, "sign": sign}
            if s.kind == SPLUS:
                label["eps"] = eps
            out.append(Representative(label, rep))
    if check:
        for rep in out:
            verdict = decide_homotopy(s, rep.surface)
            if verdict.status is Status.NOT_EQUIVALENT:
                raise ArithmeticError(f"representative {rep.label} is not homotopy equivalent")
    return out


class ClassStatus(str, enum.Enum):
    SAME_CLASS = "SameClass"
    CANDIDATE_PAIR = "CandidatePair"
    DISTINCT = "Distinct"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class ClassVerdict:
    status: ClassStatus
    homotopy: Verdict | None = None
    certificate: BiholMap | None = None
    reason: str = ""

    def to_json(self) -> dict:
        out: dict = {"status": self.status.value}
        if self.homotopy is not None:
            out["homotopy"] = self.homotopy.to_json()
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        if self.reason:
            out["reason"] = self.reason
        return out


def deformation_class(s: SurfaceDescriptor, s_prime: SurfaceDescriptor,
                      bound: int | None = None, eta_bound: int = DEFAULT_ETA_BOUND) -> ClassVerdict:
    """SameClass with a verified biholomorphism (up to t), else CandidatePair/Distinct/Unknown."""
    verdict = decide_homotopy(s, s_prime, bound)
    if verdict.status is Status.NOT_EQUIVALENT:
        return ClassVerdict(ClassStatus.DISTINCT, verdict, reason=verdict.obstruction)
    if verdict.status is Status.UNKNOWN:
        return ClassVerdict(ClassStatus.UNKNOWN, verdict, reason=verdict.obstruction)
    if s.kind == S0:
        if replace(s, sign=1) == replace(s_prime, sign=1):
            return ClassVerdict(ClassStatus.SAME_CLASS, verdict, reason="identical data")
        return ClassVerdict(ClassStatus.CANDIDATE_PAIR, verdict,
                            reason="S0: one of the two conjugate representatives")
    witnesses, _ = iter_witnesses(s, s_prime, bound or DEFAULT_CONJUGATOR_BOUND)
    usable = [w for w in witnesses if w.eps == 1]
    if not usable:
        return ClassVerdict(ClassStatus.UNKNOWN, verdict, reason="only eps = -1 witnesses")
    for w in usable:
        built = build_bihol(s, s_prime, w, eta_bound)
        if built is not None:
            return ClassVerdict(ClassStatus.SAME_CLASS, verdict, certificate=built[0],
                                reason="explicit biholomorphism (after t-adjustment)")
    return ClassVerdict(ClassStatus.CANDIDATE_PAIR, verdict,
                        reason="no orientation-compatible biholomorphism found")
