"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line."""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import replace

from conftest import N_MINUS, N_PLUS, PLASTIC, random_valid_surfaces
from inoue.census import REP_CAPS, CensusConfig, run_census
from inoue.cli import main
from inoue.equivalence import (J, EquivWitness, Status, build_bihol, decide_homotopy,
                               enumerate_representatives, iter_witnesses, verify_witness)
from inoue.fundamental_groups import (CenterClass, defining_relations, fingerprint, g_mul,
                                      word_to_normal_form)
from inoue.gamma_r import (GammaREnd, GammaRElem, end_apply, end_compose, gr_inv, gr_mul, gr_pow,
                           mu_embed, semigroup_mul)
from inoue.surfaces import (S0, SMINUS, SPLUS, SurfaceDescriptor, derive_geometry, is_valid, s0,
                            sminus, splus)

SEED = 20261017


def report(capsys, number: int, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"\n[acceptance {number}] {'PASS' if ok else 'FAIL'}: {detail}")


# -- 1-3: representative counts ------------------------------------------------------

def test_criterion_1_splus_representatives(capsys):
    start = time.perf_counter()
    s = splus(N_PLUS, 0, 0, 1)
    reps = enumerate_representatives(s)
    equivalent = all(decide_homotopy(s, r.surface).equivalent
                     and not verify_witness(s, r.surface, decide_homotopy(s, r.surface).witness)
                     for r in reps)
    sweep = random_valid_surfaces(random.Random(SEED), SPLUS, 50)
    counts = [len(enumerate_representatives(x)) for x in sweep]
    elapsed = time.perf_counter() - start
    ok = len(reps) == 16 and equivalent and max(counts) <= 16 and elapsed < 10
    report(capsys, 1, ok, f"{len(reps)} reps, all equivalent={equivalent}, sweep max {max(counts)} "
                          f"over {len(sweep)} surfaces, {elapsed:.2f}s (< 10s)")
    assert ok


def test_criterion_2_sminus_representatives(capsys):
    start = time.perf_counter()
    s = sminus(N_MINUS, 0, 0, 1)
    reps = enumerate_representatives(s)
    equivalent = all(decide_homotopy(s, r.surface).equivalent for r in reps)
    elapsed = time.perf_counter() - start
    ok = len(reps) == 8 and equivalent and elapsed < 5
    report(capsys, 2, ok, f"{len(reps)} reps, all equivalent={equivalent}, {elapsed:.2f}s (< 5s)")
    assert ok


def test_criterion_3_s0_representatives(capsys):
    start = time.perf_counter()
    reps = enumerate_representatives(s0(PLASTIC))
    elapsed = time.perf_counter() - start
    ok = len(reps) == 2 and elapsed < 1
    report(capsys, 3, ok, f"{len(reps)} reps, {elapsed:.3f}s (< 1s)")
    assert ok


# -- 4: structured decider vs brute force -----------------------------------------

K_BOUND = 12


def _mul(a, b):
    return ((a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
            (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]))


def _det(a):
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


def _inv(a):
    d = _det(a)
    return ((a[1][1] * d, -a[0][1] * d), (-a[1][0] * d, a[0][0] * d))


def _unimodular(bound):
    rng = range(-bound, bound + 1)
    return [((a, b), (c, d)) for a, b, c, d in itertools.product(rng, repeat=4) if a * d - b * c in (1, -1)]


def _in_lattice(x, r, n_prime):
    """x in r Z^2 + (N' - I) Z^2, decided by enumerating u modulo |r|."""
    m = abs(r)
    a, b = n_prime[0][0] - 1, n_prime[0][1]
    c, d = n_prime[1][0], n_prime[1][1] - 1
    for u, v in itertools.product(range(m), repeat=2):
        if (a * u + b * v - x[0]) % m == 0 and (c * u + d * v - x[1]) % m == 0:
            return True
    return False


def _brute_force(s, t, table):
    for eps in (1, -1):
        n_eps = s.N if eps == 1 else _inv(s.N)
        for k in table.get((n_eps, t.N), ()):
            for delta in (1, -1):
                if t.r != delta * _det(k) * s.r:
                    continue
                kp = (k[0][0] * s.p + k[0][1] * s.q, k[1][0] * s.p + k[1][1] * s.q)
                x = (delta * t.p - eps * kp[0], delta * t.q - eps * kp[1])
                if _in_lattice(x, s.r, t.N):
                    return True
    return False


def test_criterion_4_decider_matches_brute_force(capsys):
    start = time.perf_counter()
    rng3 = range(-3, 4)
    mats = [((a, b), (c, d)) for a, b, c, d in itertools.product(rng3, repeat=4)
            if is_valid(SurfaceDescriptor(SPLUS, N=((a, b), (c, d)), p=0, q=0, r=1))]
    units = _unimodular(K_BOUND)
    table: dict = {}
    sources = set(mats) | {_inv(m) for m in mats}
    for n in sources:
        for k in units:
            image = _mul(_mul(k, n), _inv(k))
            if image in mats:
                table.setdefault((n, image), []).append(k)
    surfaces = [splus(n, p, q, r) for n in mats for p in range(-2, 3) for q in range(-2, 3)
                for r in (-2, -1, 1, 2)]
    rng = random.Random(SEED)
    pairs = []
    # every (N, N', r, r') with equal trace and |r| = |r'|, each with random offsets
    for n, n2 in itertools.product(mats, repeat=2):
        if n[0][0] + n[1][1] != n2[0][0] + n2[1][1]:
            continue
        for r, sgn in itertools.product((1, 2, -1, -2), (1, -1)):
            for _ in range(2):
                off = [rng.randint(-2, 2) for _ in range(4)]
                pairs.append((splus(n, off[0], off[1], r), splus(n2, off[2], off[3], sgn * r)))
    for _ in range(300):    # unrestricted pairs
        pairs.append((rng.choice(surfaces), rng.choice(surfaces)))
    disagreements = []
    positives = 0
    for s, t in pairs:
        verdict = decide_homotopy(s, t)
        expected = _brute_force(s, t, table)
        positives += expected
        if verdict.status is Status.UNKNOWN or verdict.equivalent != expected:
            disagreements.append((s, t, verdict.status.value, expected))
    elapsed = time.perf_counter() - start
    ok = not disagreements and elapsed < 120
    report(capsys, 4, ok, f"{len(pairs)} pairs ({positives} equivalent), "
                          f"{len(disagreements)} disagreements, {elapsed:.1f}s (< 120s)")
    assert ok, disagreements[:5]


# -- 5: biholomorphisms --------------------------------------------------------------

def _bihol_instances():
    rng = random.Random(SEED)
    out = []
    ident = ((1, 0), (0, 1))
    for kind in (SPLUS, SMINUS):
        for s in random_valid_surfaces(rng, kind, 4):
            out.append(("identity", s, s, EquivWitness(kind, ident, 1, 1, (0, 0, 0, 0)), None))
            out.append(("rescale", s, s, EquivWitness(kind, ident, 1, 1, (0, 0, 0, 0)),
                        derive_geometry(s, 2, 5)))
    for s, t in ((splus(N_PLUS, 0, 0, 1), splus(((1, 1), (1, 2)), 0, 0, -1)),
                 (splus(N_PLUS, 1, 0, 2), splus(((1, 1), (1, 2)), 0, 1, -2)),
                 (sminus(N_MINUS, 0, 0, 1), sminus(((0, 1), (1, 2)), 0, 0, -1)),
                 (sminus(N_MINUS, 1, 0, 2), sminus(((0, 1), (1, 2)), 0, 1, -2))):
        w = decide_homotopy(s, t).witness
        assert w.K == J
        out.append(("K=J", s, t, w, None))
    for kind in (SPLUS, SMINUS):
        for s in random_valid_surfaces(rng, kind, 8, entry=3, offsets=2, rmax=2):
            t = replace(s, p=s.p + 1)
            for w in iter_witnesses(s, t)[0]:
                if w.eps == 1:
                    out.append(("witness", s, t, w, None))
    return out


def test_criterion_5_biholomorphisms(capsys):
    built, worst, labels = 0, 0.0, set()
    for label, s, t, w, geom_prime in _bihol_instances():
        result = build_bihol(s, t, w, geom_prime=geom_prime)
        if result is None:
            continue   # orientation-incompatible witness; nothing to verify
        bihol, _ = result
        worst = max(worst, bihol.max_deviation)
        built += 1
        labels.add(label)
    ok = built >= 20 and worst < 1e-9 and {"K=J", "rescale"} <= labels
    report(capsys, 5, ok, f"{built} maps verified, worst deviation {worst:.2e} (< 1e-9), "
                          f"cases {sorted(labels)}")
    assert ok


# -- 6: exact identities -------------------------------------------------------------

def test_criterion_6_exact_identities(capsys):
    rng = random.Random(SEED)
    failures, total = [], 0
    for kind in (SPLUS, SMINUS):
        for s in random_valid_surfaces(rng, kind, 100):
            total += 1
            ids = derive_geometry(s).identities()
            if not all(ids.values()):
                failures.append((s, ids))
    ok = not failures
    report(capsys, 6, ok, f"{total} descriptors (100 S+, 100 S-), {len(failures)} exact failures")
    assert ok, failures[:3]


# -- 7: group laws -------------------------------------------------------------------

def _rand_elem(rng, r):
    y2 = rng.randint(-30, 30)
    return GammaRElem((rng.randint(-6, 6), rng.randint(-6, 6)), y2 * 2 if r % 2 == 0 else y2, r)


def test_criterion_7_group_laws(capsys):
    rng = random.Random(SEED)
    cases = 1000
    fails = {"associativity": 0, "mu": 0, "anti-isomorphism": 0, "normal form": 0}
    for _ in range(cases):
        r = rng.choice([x for x in range(-5, 6) if x])
        a, b, c = (_rand_elem(rng, r) for _ in range(3))
        if gr_mul(gr_mul(a, b), c) != gr_mul(a, gr_mul(b, c)):
            fails["associativity"] += 1

        l = [rng.randint(-5, 5) for _ in range(6)]
        g1, g2, g3 = mu_embed(1, 0, 0, r), mu_embed(0, 1, 0, r), mu_embed(0, 0, 1, r)
        word = gr_mul(gr_mul(gr_pow(g1, l[0]), gr_pow(g2, l[1])), gr_pow(g3, l[2]))
        commutator = gr_mul(gr_mul(g1, g2), gr_inv(gr_mul(g2, g1)))
        other = mu_embed(l[3], l[4], l[5], r)
        prod = gr_mul(word, other)
        expected_prod = gr_mul(gr_mul(gr_pow(g1, l[0]), gr_pow(g2, l[1])),
                               gr_mul(gr_pow(g3, l[2]), other))
        if word != mu_embed(l[0], l[1], l[2], r) or commutator != gr_pow(g3, r) or prod != expected_prod:
            fails["mu"] += 1

        phi = GammaREnd(tuple(tuple(rng.randint(-3, 3) for _ in range(2)) for _ in range(2)),
                        (2 * rng.randint(-4, 4), 2 * rng.randint(-4, 4)))
        psi = GammaREnd(tuple(tuple(rng.randint(-3, 3) for _ in range(2)) for _ in range(2)),
                        (2 * rng.randint(-4, 4), 2 * rng.randint(-4, 4)))
        composed = end_compose(phi, psi)
        if (end_apply(composed, a) != end_apply(phi, end_apply(psi, a))
                or composed != semigroup_mul(psi, phi)):
            fails["anti-isomorphism"] += 1

        kind = rng.choice([SPLUS, SMINUS, S0])
        if kind == S0:
            g = s0(PLASTIC).group()
        else:
            g = random_valid_surfaces(rng, kind, 1, entry=3)[0].group()
        w = [(rng.randint(0, 3), rng.choice([-2, -1, 1, 2])) for _ in range(5)]
        rel = rng.choice(defining_relations(g))
        pos = rng.randint(0, len(w))
        inserted = w[:pos] + list(rel.lhs) + [(i, -e) for i, e in reversed(rel.rhs)] + w[pos:]
        u = [(rng.randint(0, 3), rng.choice([-1, 1])) for _ in range(3)]
        split = word_to_normal_form(w + u, g) == g_mul(word_to_normal_form(w, g),
                                                       word_to_normal_form(u, g), g)
        if word_to_normal_form(inserted, g) != word_to_normal_form(w, g) or not split:
            fails["normal form"] += 1
    ok = not any(fails.values())
    report(capsys, 7, ok, f"{cases} cases per law, failures {fails}")
    assert ok


# -- 8: fingerprints -----------------------------------------------------------------

def test_criterion_8_fingerprints(capsys):
    seen: dict = {SPLUS: set(), SMINUS: set(), S0: set()}
    counts = dict.fromkeys(seen, 0)
    rng4 = range(-4, 5)
    for kind in (SPLUS, SMINUS):
        for a, b, c, d in itertools.product(rng4, repeat=4):
            desc = SurfaceDescriptor(kind, N=((a, b), (c, d)), p=1, q=-1, r=2)
            if is_valid(desc):
                seen[kind].add(fingerprint(desc.group()))
                counts[kind] += 1
    for flat in itertools.product(range(-1, 2), repeat=9):
        desc = s0(tuple(tuple(flat[i * 3:i * 3 + 3]) for i in range(3)))
        if is_valid(desc):
            seen[S0].add(fingerprint(desc.group()))
            counts[S0] += 1
    per_kind = {k: next(iter(v)) if len(v) == 1 else None for k, v in seen.items()}
    ok = all(v is not None for v in per_kind.values()) and len(set(per_kind.values())) == 3
    ok = ok and per_kind[SPLUS][0] is CenterClass.INFINITE_CYCLIC
    shown = {k: (v[0].value, v[1]) if v else None for k, v in per_kind.items()}
    report(capsys, 8, ok, f"descriptors tested {counts}; signatures {shown}")
    assert ok


# -- 9: census -----------------------------------------------------------------------

def test_criterion_9_census(capsys, tmp_path):
    args = ["census", "--nmax", "2", "--pmax", "1", "--rmax", "1"]
    outputs = []
    codes = []
    for i, extra in enumerate(([], [], ["--jobs", "2"])):
        path = tmp_path / f"r{i}.json"
        codes.append(main(args + extra + ["--out", str(path)]))
        outputs.append(path.read_bytes())
    doc = json.loads(outputs[0])
    caps_ok = all(cls["deformation_representative_count"] <= REP_CAPS[kind]
                  for kind, part in doc["kinds"].items() for cls in part["classes"])
    finite = {kind: len(part["classes"]) for kind, part in doc["kinds"].items()}
    deterministic = len(set(outputs)) == 1
    in_process = run_census(CensusConfig(2, 1, 1)).dumps() + "\n"
    ok = deterministic and caps_ok and in_process.encode() == outputs[0] and set(codes) <= {0, 2}
    report(capsys, 9, ok, f"classes per kind {finite}, byte-identical across runs/jobs="
                          f"{deterministic}, caps respected={caps_ok}, exit codes {codes}")
    assert ok
