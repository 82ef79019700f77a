"""Exhaustive comparisons of the closed-form rules against the character oracle.

Each ``check_*`` function returns ``(count, problems)`` where ``problems`` is a
list of human-readable discrepancy strings.
"""

from repstab.branching import (
    length_drop_bound_gl,
    length_drop_bound_sp,
    outer_restrict,
    restrict_gl_one,
    restrict_sp_one,
    sp_restriction_support,
    stable_branch_gl,
    stable_branch_sp,
    tau,
    tensor,
)
from repstab.characters import character, decompose, split_restrict
from repstab.labels import GL, SP, GlLabel, SpLabel, VirtualDecomp
from repstab.partitions import partitions_of, partitions_up_to

GL_RANKS = (2, 3, 4)
SP_RANKS = (1, 2, 3)
MAX_SIZE = 4


def gl_labels(max_size, n):
    out = []
    for s in range(max_size + 1):
        for a in range(s + 1):
            for p in partitions_of(a):
                for m in partitions_of(s - a):
                    if len(p) + len(m) <= n:
                        out.append(GlLabel(p, m))
    return out


def sp_labels(max_size, n):
    return [SpLabel(p) for p in partitions_up_to(max_size, n)]


def labels(kind, max_size, n):
    return gl_labels(max_size, n) if kind == GL else sp_labels(max_size, n)


def cases(max_size=MAX_SIZE, gl_ranks=GL_RANKS, sp_ranks=SP_RANKS):
    for n in gl_ranks:
        yield GL, n, labels(GL, max_size, n)
    for n in sp_ranks:
        yield SP, n, labels(SP, max_size, n)


# --------------------------------------------------------------------------
# oracle equivalence

def check_tensor(kind, n, labs):
    count, bad = 0, []
    for i, a in enumerate(labs):
        for b in labs[i:]:
            got = tensor(a, b, kind, n).terms
            want = decompose(character(a, kind, n) * character(b, kind, n), kind, n).terms
            count += 1
            if got != want:
                bad.append(f"tensor {kind}{n} {a} x {b}: {got} != {want}")
    return count, bad


def check_outer(kind, n, labs):
    count, bad = 0, []
    for lab in labs:
        f = character(lab, kind, n)
        for m in range(n + 1):
            got = outer_restrict(lab, kind, m, n - m)
            want = split_restrict(f, kind, n, m)
            count += 1
            if got != want:
                bad.append(f"outer {kind}{n} {lab} at ({m},{n - m}): {got.terms} != {want.terms}")
    return count, bad


def check_restrict_one(kind, n, labs):
    count, bad = 0, []
    for lab in labs:
        want = decompose(character(lab, kind, n).drop_last(), kind, n - 1)
        if kind == GL:
            got = restrict_gl_one(lab, n)
        else:
            got = restrict_sp_one(lab, n, method="interlacing")
            support = {mu for mu in partitions_up_to(lab.size, n - 1) if sp_restriction_support(lab.lam, mu, n)}
            if support != {mu.lam for mu in want.terms}:
                bad.append(f"support Sp{n} {lab}: predicate {sorted(support)} vs oracle {list(want.terms)}")
        count += 1
        if got != want:
            bad.append(f"restrict {kind}{n} {lab}: {got.terms} != {want.terms}")
    return count, bad


def check_tau(kind, n, labs):
    count, bad = 0, []
    for lab in labs:
        f = character(lab, kind, n)
        for a in range(n + 1):
            got = tau(VirtualDecomp(kind, n, {lab: 1}), a).decomp
            want = split_restrict(f, kind, n, a).second_trivial()
            count += 1
            if got != want:
                bad.append(f"tau {kind}{n} {lab} a={a}: {got.terms} != {want.terms}")
    return count, bad


ORACLE_CHECKS = (("tensor", check_tensor), ("outer_restrict", check_outer),
                 ("restrict_one", check_restrict_one), ("tau", check_tau))


# --------------------------------------------------------------------------
# corollaries and stable branching

def _trivial(kind):
    return GlLabel() if kind == GL else SpLabel()


def check_corollaries(kind, n, labs):
    count, bad = 0, []
    bound = length_drop_bound_gl if kind == GL else length_drop_bound_sp
    for lab in labs:
        if n >= 1:
            one = restrict_gl_one(lab, n) if kind == GL else restrict_sp_one(lab, n)
            for mu, _ in one:
                count += 1
                if not bound(lab, mu, 1):
                    bad.append(f"length bound {kind}{n} {lab} -> {mu} (m=1)")
        for m in range(n + 1):
            dec = outer_restrict(lab, kind, m, n - m)
            # restriction to G_m drops at most 2(n-m) rows
            for (mu, nu), _ in dec:
                count += 1
                if not bound(lab, mu, n - m):
                    bad.append(f"length bound {kind}{n} {lab} -> {mu} (m={n - m})")
            # multiplicity one for first factors at least as large as lab
            if lab.valid_at(m):
                count += 1
                if dec[(lab, _trivial(kind))] != 1:
                    bad.append(f"branching {kind}{n} {lab} at ({m},{n - m}): [lab x trivial] != 1")
            for (mu, nu), c in dec:
                if mu.size >= lab.size:
                    count += 1
                    if (mu, nu) != (lab, _trivial(kind)):
                        bad.append(f"branching {kind}{n} {lab} at ({m},{n - m}): ({mu},{nu}) has {c}")
                if kind == GL and (len(lab.plus) < len(mu.plus) or len(lab.minus) < len(mu.minus)):
                    bad.append(f"branching {kind}{n} {lab}: first factor {mu} is longer")
    return count, bad


def _gl_hypothesis(lab, mu, nu, m, k):
    p = max(len(lab.plus), len(mu.plus), len(nu.plus))
    q = max(len(lab.minus), len(mu.minus), len(nu.minus))
    return p + q <= min(m, k)


def _sp_hypothesis(lab, mu, nu, m, k):
    return max(lab.length, mu.length, nu.length) <= min(m, k)


def stable_pairs(kind, lab, m, k):
    """Every (mu, nu) in the stable range, whether or not it occurs."""
    hyp = _gl_hypothesis if kind == GL else _sp_hypothesis
    left, right = labels(kind, lab.size, m), labels(kind, lab.size, k)
    for mu in left:
        for nu in right:
            if mu.size + nu.size <= lab.size and hyp(lab, mu, nu, m, k):
                yield mu, nu


def stable_value(kind, lab, mu, nu):
    if kind == GL:
        return stable_branch_gl(lab.plus, lab.minus, mu.plus, mu.minus, nu.plus, nu.minus)
    return stable_branch_sp(lab.lam, mu.lam, nu.lam)


def check_stable_at(kind, lab, m, k):
    count, bad = 0, []
    dec = outer_restrict(lab, kind, m, k)
    hyp = _gl_hypothesis if kind == GL else _sp_hypothesis
    if not hyp(lab, _trivial(kind), _trivial(kind), m, k):
        return 0, []
    seen = set()
    for mu, nu in stable_pairs(kind, lab, m, k):
        seen.add((mu, nu))
        count += 1
        if stable_value(kind, lab, mu, nu) != dec[(mu, nu)]:
            bad.append(f"stable {kind} {lab} at ({m},{k}) on ({mu},{nu}): "
                       f"{stable_value(kind, lab, mu, nu)} != {dec[(mu, nu)]}")
    # every in-hypothesis constituent was among the pairs compared
    for (mu, nu), _ in dec:
        if hyp(lab, mu, nu, m, k) and (mu, nu) not in seen:
            bad.append(f"stable {kind} {lab} at ({m},{k}): constituent ({mu},{nu}) not enumerated")
    return count, bad


def check_stable(kind, n, labs):
    count, bad = 0, []
    for lab in labs:
        for m in range(n + 1):
            c, b = check_stable_at(kind, lab, m, n - m)
            count += c
            bad += b
    return count, bad
