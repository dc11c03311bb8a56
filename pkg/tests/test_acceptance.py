"""Acceptance criteria 1-10, one PASS/FAIL line each.

Every tolerance is exact (integer or Fraction equality/inequality); the only
non-exact limits are the wall-clock and memory budgets of criterion 10.
Run directly (``python tests/test_acceptance.py``) to print the lines without pytest.
"""
import json
import random
import subprocess
import sys
import time
from fractions import Fraction

from oracles import brute_complexity, brute_occurrences, brute_right_special, brute_structure
from wordcx.certificates import anchored_family, ray_families, ray_window
from wordcx.codes import PeriodicOrbit, apply_sbc, phi_reduce
from wordcx.complexity import ComplexityProfiler, SubwordIndex, complexity_profile, schedule_formula_violations
from wordcx.errors import PreconditionError
from wordcx.schedule import GapConstruction, build_schedule, construction_prefix, growth_function, wk_word
from wordcx.structure import empirical_frequency, structure_check
from wordcx.words import EventuallyPeriodicGenerator, SequenceGenerator, SturmianGenerator, occurrences

SEED = 20240607
HORIZON_FORMULA = 2000      # criteria 1, 2, 5
HORIZON_EXAMPLE = 500       # criterion 3
HORIZON_STURMIAN = 1000     # criterion 4
HORIZON_CODE = 1000         # criterion 6
CERT_TRIALS = 100           # criterion 7, per family
CERT_MAX_WINDOW = 2000
MIN_DISTINCT_LEVELS = 3     # criterion 8
ORACLE_WINDOWS = 500        # criterion 9
ORACLE_MAX_LEN = 1000
PERF_LENGTH = 10 ** 6       # criterion 10
PERF_HORIZON = 10 ** 4
PERF_SECONDS = 30.0
PERF_MEGABYTES = 2048.0

RESULTS = {}


def record(i, ok, detail):
    RESULTS[i] = (bool(ok), detail)
    print(f"criterion {i:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def summary_lines():
    return [f"criterion {i:2d}: {'PASS' if ok else 'FAIL'}  {detail}" for i, (ok, detail) in sorted(RESULTS.items())]


_cache = {}


def log2_fit():
    if "log2" not in _cache:
        sched = build_schedule("floor-log2", 5)
        est = ComplexityProfiler(horizon=HORIZON_FORMULA).fit(GapConstruction.for_horizon(sched, HORIZON_FORMULA))
        _cache["log2"] = (sched, est)
    return _cache["log2"]


def test_criterion_01_formula_exact():
    t = time.perf_counter()
    sched, est = log2_fit()
    bad = schedule_formula_violations(est.profile_, sched)
    elapsed = time.perf_counter() - t
    record(1, est.stabilization_ok_ and not bad and elapsed < 10,
           f"c_n = n+1+|[1,n-1]&R| for n<={HORIZON_FORMULA}: gate={est.stabilization_ok_}, "
           f"violations={len(bad)}, window={len(est.window_)}, {elapsed:.2f}s")


def test_criterion_02_upper_bound():
    sched, est = log2_fit()
    f = growth_function("floor-log2")
    c = est.profile_.c
    # c_n < 1.5n + f(n) + 1, doubled to stay in integers
    bad = [n for n in range(1, HORIZON_FORMULA + 1) if not 2 * c[n] < 3 * n + 2 * f(n) + 2]
    slack = min(Fraction(3 * n, 2) + f(n) + 1 - c[n] for n in range(1, HORIZON_FORMULA + 1))
    record(2, est.stabilization_ok_ and not bad, f"c_n < 1.5n+f(n)+1 for n<={HORIZON_FORMULA}: violations={len(bad)}, min slack={slack}")


def test_criterion_03_intro_example():
    est = ComplexityProfiler(horizon=HORIZON_EXAMPLE).fit(EventuallyPeriodicGenerator("12", "3", "4"))
    bad = [n for n in range(1, HORIZON_EXAMPLE + 1) if est.profile_.c[n] != n + 3]
    record(3, est.stabilization_ok_ and not bad, f"...1212344444... gives c_n = n+3 for n<={HORIZON_EXAMPLE}: mismatches={len(bad)}")


def test_criterion_04_sturmian():
    est = ComplexityProfiler(horizon=HORIZON_STURMIAN).fit(SturmianGenerator())
    bad = [n for n in range(1, HORIZON_STURMIAN + 1) if est.profile_.c[n] != n + 1]
    record(4, est.stabilization_ok_ and not bad,
           f"golden rotation gives c_n = n+1 for n<={HORIZON_STURMIAN}: gate={est.stabilization_ok_}, mismatches={len(bad)}")


def test_criterion_05_right_special_census():
    sched, est = log2_fit()
    table = est.right_special_table(HORIZON_FORMULA)
    suffixes = {k: wk_word(sched, k) for k in range(sched.depth + 1) if sched.w_len[k] <= HORIZON_FORMULA}
    bad = []
    for n in range(1, HORIZON_FORMULA + 1):
        expected = {"0" * n}
        for k, (lo, hi) in enumerate(sched.R):
            if lo < n <= hi:
                expected.add(suffixes[k][-n:])
        if table[n].word_set() != expected:
            bad.append(n)
    record(5, est.stabilization_ok_ and not bad, f"right-special sets are {{0^n}} plus the w(k) suffix on R, for n<={HORIZON_FORMULA}: mismatches={len(bad)}")


class _SplicedGenerator(SequenceGenerator):
    """(012)^inf on the left, a ternary recoding of the golden rotation on the right."""

    kind = "test-spliced"

    def __init__(self):
        self.sturm = SturmianGenerator()

    def window(self, L, R):
        from wordcx.words import Window

        bits = self.sturm.window(max(L, 0), max(R, 0) + 1).content if R >= 0 else ""
        out = []
        for pos in range(L, R + 1):
            if pos < 0:
                out.append("012"[pos % 3])
            else:
                b = bits[pos - max(L, 0):pos - max(L, 0) + 2]
                out.append({"00": "0", "01": "1", "10": "2", "11": "3"}[b])
        return Window("".join(out), L)

    def to_config(self):
        return {"kind": self.kind}


def test_criterion_06_code_inequality():
    sources = [("spliced", _SplicedGenerator(), "012"), ("intro", EventuallyPeriodicGenerator("12", "3", "4"), "12")]
    checked, bad, gated = 0, [], True
    for name, gen, period in sources:
        est = ComplexityProfiler(horizon=HORIZON_CODE).fit(gen)
        gated &= bool(est.stabilization_ok_)
        src = est.profile_.c
        for k in range(len(period) + 1, len(period) + 4):
            image = apply_sbc(phi_reduce(PeriodicOrbit(period), k), est.window_)
            img = complexity_profile(image, HORIZON_CODE - k + 1).c
            for n in range(k, HORIZON_CODE + 1):
                checked += 1
                if img[n - k + 1] > src[n]:
                    bad.append((name, k, n))
    record(6, gated and not bad, f"c_(n-k+1)(phi x) <= c_n(x) for k<=n<={HORIZON_CODE}: {checked} pairs, violations={len(bad)}")


def _random_rays(rng):
    variant = rng.choice(["multyz", "inf0run", "lastcase"])
    n = rng.randint(3, 60)
    bits = lambda size: "".join(rng.choice("01") for _ in range(size))
    if variant == "multyz":
        y, y2 = "1" + bits(n + 10), "1" + bits(n + 10)
        return variant, y, "", n, {"y_alt": y2}
    if variant == "inf0run":
        k = rng.randint(1, 4)
        y = "1"
        while len(y) < n:
            y += "0" * rng.randint(0, k - 1) + "1"
        return variant, y, bits(n) + "1", n, {"k": k}
    k = rng.randint(1, 3)
    y = "1" + bits(rng.randint(2 * k, 30)) + "0" * rng.randint(1, 40) + bits(rng.randint(0, 20)) + "1"
    return variant, y, bits(rng.randint(40, 120)) + "1", None, {"k": k}


def test_criterion_07_certificate_soundness():
    rng = random.Random(SEED)
    anchored_ok = 0
    while anchored_ok < CERT_TRIALS:
        size = rng.randint(20, CERT_MAX_WINDOW)
        content = "".join(rng.choice("0123"[:rng.randint(2, 4)]) for _ in range(size))
        i = rng.randrange(size - 5)
        marker = content[i:i + rng.randint(1, 5)]
        n = rng.randint(len(marker), min(size, 80))
        cert = anchored_family(content, marker, n)
        cert.verify(content)
        assert cert.claimed_bound <= len(set(cert.words)) <= brute_complexity(content, n)
        anchored_ok += 1
    ray_ok, tried, variants = 0, 0, set()
    while ray_ok < CERT_TRIALS:
        tried += 1
        variant, y, z, n, params = _random_rays(rng)
        try:
            cert = ray_families(y, z, n, variant, params)
        except PreconditionError:
            continue
        w = ray_window(y, z, cert.n, params.get("y_alt"))
        if len(w) > CERT_MAX_WINDOW:
            continue
        cert.verify(w)
        assert cert.claimed_bound <= len(set(cert.words)) <= brute_complexity(w.content, cert.n)
        ray_ok += 1
        variants.add(variant)
    record(7, anchored_ok == CERT_TRIALS and ray_ok == CERT_TRIALS and len(variants) == 3,
           f"{anchored_ok} anchored + {ray_ok} ray certificates ({sorted(variants)}; {tried - ray_ok} precondition rejects) verified, bound <= brute c_n")


def _zero_power_counts(content, jmax):
    # independent count of 0^j occurrences from the zero-run lengths
    runs = [len(r) for r in content.split("1") if r]
    return {j: sum(r - j + 1 for r in runs if r >= j) for j in range(1, jmax + 1)}


def test_criterion_08_structure_surrogate():
    sched = build_schedule("constant-plus-step", 6)
    w = construction_prefix(sched, 2 ** (sched.K + 1) - 1)
    content = w.content
    passes, freq_bad, checked = [], 0, 0
    for j_level, m in enumerate(sched.n):
        if 3 * m > len(content):
            continue
        ok = structure_check(w, PeriodicOrbit("0"), m, 0).ok
        assert ok == brute_structure(content, "0", m)[0] if m <= 60 else True
        if not ok:
            continue
        passes.append(j_level)
        counts = _zero_power_counts(content, m)
        for j in range(1, m + 1):
            freq = empirical_frequency(w, "0" * j)
            assert freq == Fraction(counts[j], len(content) - j + 1)
            checked += 1
            if freq < Fraction(m - j, 3 * m):
                freq_bad += 1
    record(8, len(passes) >= MIN_DISTINCT_LEVELS and freq_bad == 0 and sched.complete,
           f"K=6 window (|w|={len(content)}): passes at m=n_j for j={passes}, {checked} exact frequency bounds, failures={freq_bad}")


def test_criterion_09_oracles():
    rng = random.Random(SEED + 9)
    mismatches = []
    for trial in range(ORACLE_WINDOWS):
        sigma = rng.randint(2, 4)
        size = rng.randint(1, ORACLE_MAX_LEN)
        content = "".join(rng.choice("abcd"[:sigma]) for _ in range(size))
        index = SubwordIndex(content)
        prof = index.profile(size)
        if list(prof.c) != [brute_complexity(content, n) for n in range(size + 1)]:
            mismatches.append((trial, "profile"))
        for n in range(1, size):
            if index.right_special(n).word_set() != brute_right_special(content, n):
                mismatches.append((trial, "right_special", n))
                break
        for _ in range(3):
            i = rng.randrange(size)
            u = content[i:i + rng.randint(1, 4)]
            if occurrences(u, content) != brute_occurrences(u, content):
                mismatches.append((trial, "occurrences", u))
        period = rng.choice(["a", "ab", "b", "abc"[:sigma]])
        m, k = rng.randint(1, 6), rng.randint(0, 3)
        if 3 * m + k <= size:
            got = structure_check(content, PeriodicOrbit.of(period), m, k)
            if (got.ok, got.first_violation) != brute_structure(content, PeriodicOrbit.of(period).period, m, k):
                mismatches.append((trial, "structure", period, m, k))
    record(9, not mismatches, f"{ORACLE_WINDOWS} random windows (len<={ORACLE_MAX_LEN}, |A| in 2..4) agree with brute force: mismatches={len(mismatches)}")


PERF_SCRIPT = """
import json, random, resource, time
from wordcx.complexity import complexity_profile
rng = random.Random(%d)
content = "".join(rng.choice("01") for _ in range(%d))
t = time.perf_counter()
prof = complexity_profile(content, %d)
elapsed = time.perf_counter() - t
rss = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024.0
print(json.dumps({"seconds": elapsed, "max_rss_mb": rss, "c": [prof.c[n] for n in (1, 10, 20, 40, %d)]}))
"""


def test_criterion_10_performance():
    script = PERF_SCRIPT % (SEED, PERF_LENGTH, PERF_HORIZON, PERF_HORIZON)
    res = subprocess.run([sys.executable, "-c", script], capture_output=True, text=True, timeout=600)
    assert res.returncode == 0, res.stderr
    stats = json.loads(res.stdout)
    # a random binary string of this length has all 2^n words for small n and no repeats at n = 10^4
    sane = stats["c"][0] == 2 and stats["c"][1] == 1024 and stats["c"][-1] == PERF_LENGTH - PERF_HORIZON + 1
    record(10, sane and stats["seconds"] < PERF_SECONDS and stats["max_rss_mb"] < PERF_MEGABYTES,
           f"10^6 symbols, N=10^4: {stats['seconds']:.1f}s (limit {PERF_SECONDS:.0f}s), "
           f"peak RSS {stats['max_rss_mb']:.0f} MB (limit {PERF_MEGABYTES:.0f} MB)")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
