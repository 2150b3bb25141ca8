"""Parameter diagnostics for the weight families.

Everything here sits on top of the representation layer: spectra and their
collisions, the dichotomy at the degenerate parameter ladders, equivalence
and canonical forms of parameter tuples, a numeric intertwiner search, and
the q -> 1 behaviour that separates the two kinds of families.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import AlgebraError, NonExtendableError, ReducibleParametersError
from .repmod import (
    EXACT,
    Field,
    Window,
    iso2_weight_action,
    ladder_point,
    nonclassical_rep,
    weight_rep_iso2,
)
from .scalars import Scalar

# ---------------------------------------------------------------------------
# spectra and the degeneracy dichotomy


def spectrum_of_rotation(s, r, window: Window, field: Field = EXACT) -> dict:
    """Eigenvalue of the rotation generator at each index of the window."""
    act = iso2_weight_action(field, s, r)
    return {m: act("I", m)[m] for m in window.indices()}


def spectrum_collisions(s, window: Window, field: Field = EXACT):
    """Pairs of distinct indices where the rotation eigenvalues agree."""
    eigs = spectrum_of_rotation(s, field.one, window, field)
    items = sorted(eigs.items())
    out = []
    for i, (m1, v1) in enumerate(items):
        for m2, v2 in items[i + 1:]:
            if field.eq(v1, v2):
                out.append((m1, m2))
    return out


def classify_weight_parameter(s, field: Field = EXACT, search: int = 24) -> dict:
    """One of three verdicts for the weight parameter.

    generic: the two-parameter family is irreducible and extendable;
    reducible: s sits on the half-odd ladder, the family splits in two;
    non-extendable: s sits on the integer ladder and the localized
    generators hit a pole, so the family does not extend.
    """
    lp = ladder_point(s, field, search=search)
    if lp is None:
        return {"kind": "generic"}
    kind, idx, sign = lp
    if kind == "half-odd":
        return {"kind": "reducible", "m": idx, "sign": sign}
    return {"kind": "non-extendable", "n": idx, "sign": sign}


# ---------------------------------------------------------------------------
# equivalence and canonical forms


def _ratio_is_q_power(s1, s2, field: Field, search: int):
    """n with s2 = q^n s1, or None."""
    if field.kind == "exact":
        ratio = s2 / s1
        mono = ratio.as_monomial() if isinstance(ratio, Scalar) else None
        if mono is None:
            return None
        c, (et, es, er) = mono
        if es or er or et % 2 or c != 1:
            return None
        return et // 2
    for n in range(-search, search + 1):
        t = s1 * field.qp(n)
        if abs(s2 - t) <= (field.tol or 1e-9) * max(1.0, abs(t)):
            return n
    return None


def _guard_weight_param(s, field: Field, search: int):
    cls = classify_weight_parameter(s, field, search)
    if cls["kind"] == "reducible":
        raise ReducibleParametersError(
            "parameter sits on the half-odd ladder; decompose instead of comparing"
        )
    if cls["kind"] == "non-extendable":
        raise NonExtendableError(n=cls["n"], sign=cls["sign"])


def weight_params_equivalent(s1, r1, s2, r2, field: Field = EXACT, search: int = 24) -> bool:
    """Whether (s1, r1) and (s2, r2) label the same irreducible family:
    the weight parameter may slide along integer q-powers and the amplitude
    may flip sign."""
    _guard_weight_param(s1, field, search)
    _guard_weight_param(s2, field, search)
    if _ratio_is_q_power(s1, s2, field, search) is None:
        return False
    if field.kind == "exact":
        return r2 == r1 or r2 == -r1
    tol = field.tol or 1e-9
    return abs(r2 - r1) <= tol * max(1.0, abs(r1)) or abs(r2 + r1) <= tol * max(1.0, abs(r1))


def block_params_equivalent(p1, p2, field: Field = EXACT) -> bool:
    """(r, eps, eps_tilde) labels; flipping the sign of both r and
    eps_tilde relabels the same block."""
    r1, e1, t1 = p1
    r2, e2, t2 = p2
    if e1 != e2:
        return False
    same_r = field.eq(r1, r2) if field.kind == "numeric" else r1 == r2
    if t1 == t2 and same_r:
        return True
    neg_r = field.eq(r1, -r2) if field.kind == "numeric" else r1 == -r2
    return t1 == -t2 and neg_r


def canonical_weight_params(s, r, field: Field = EXACT, search: int = 24):
    """Slide s into the fundamental q-window and normalize the sign of r."""
    _guard_weight_param(s, field, search)
    if field.kind == "exact":
        s_can = s
        mono = s.as_monomial() if isinstance(s, Scalar) else None
        if mono is not None:
            c, (et, es, er) = mono
            if not er and es in (0, 1):
                from .scalars import monomial

                s_can = monomial(c, et - 2 * (et // 2), es, 0)
        r_can = r
        rm = r.as_monomial() if isinstance(r, Scalar) else None
        if rm is not None:
            c, _ = rm
            if c.re < 0 or (c.re == 0 and c.im < 0):
                r_can = -r
        return s_can, r_can
    q = abs(field.qval)
    if abs(q - 1.0) < 1e-12:
        raise AlgebraError("cannot normalize at |q| = 1")
    n = math.floor(math.log(abs(s)) / math.log(q))
    s_can = s * field.qp(-n)
    r_can = r
    if r.real < 0 or (r.real == 0 and r.imag < 0):
        r_can = -r
    return s_can, r_can


def canonical_block_params(r, eps, eps_tilde):
    """Flip onto the eps_tilde = +1 representative."""
    if eps_tilde == 1:
        return r, eps, 1
    return -r, eps, 1


# ---------------------------------------------------------------------------
# numeric intertwiner search


def _dense(op, positions) -> np.ndarray:
    n = len(positions)
    a = np.zeros((n, n), dtype=complex)
    for col, colmap in op.cols.items():
        j = positions.get(col)
        if j is None:
            continue
        for row, v in colmap.items():
            i = positions.get(row)
            if i is not None:
                a[i, j] = complex(v)
    return a


def intertwiner_search(ops_a: dict, ops_b: dict, window: Window, gens=("I", "T1", "T2"), margin: int = 4):
    """Smallest-residual candidate for X with X A_g = B_g X on the window.

    Equations are taken only on the interior (margin columns and rows are
    dropped), and the unknown matrix lives on a one-step-larger interior,
    so every unknown entry is constrained and truncation effects stay out
    of the residual.  Returns {"sigma", "matrix", "labels"}: sigma is the
    smallest singular value of the constraint map restricted to unit-norm
    X, near zero exactly when an intertwiner exists.
    """
    idx = list(window.indices())
    n = len(idx)
    if 2 * margin + 3 > n:
        raise AlgebraError("window too small for margin %d" % (margin,))
    positions = {m: p for p, m in enumerate(idx)}
    eqs = range(margin, n - margin)
    unk = range(margin - 1, n - margin + 1)

    # unknown entries of X are allocated lazily, so an entry that no
    # interior equation constrains never becomes a variable (a corner entry
    # would otherwise sit in the kernel for free)
    var_ids: dict = {}
    equations = []
    for g in gens:
        a = _dense(ops_a[g], positions)
        b = _dense(ops_b[g], positions)
        scale = max(np.max(np.abs(a)), np.max(np.abs(b)), 1e-300)
        a /= scale
        b /= scale
        for c in eqs:
            acol = [(k, a[k, c]) for k in unk if a[k, c] != 0]
            for row in eqs:
                entries = {}
                for k, av in acol:
                    entries[(row, k)] = entries.get((row, k), 0) + av
                for k in unk:
                    bv = b[row, k]
                    if bv != 0:
                        entries[(k, c)] = entries.get((k, c), 0) - bv
                # entries below the rounding floor of the scaled generator
                # matrices are cancellation residue, not constraints; keeping
                # them would turn into false unit-strength equations below
                entries = {key: v for key, v in entries.items() if abs(v) > 1e-13}
                if not entries:
                    continue
                # row equilibration: keeps the kernel, stops the residual
                # from being diluted where the generator entries decay
                norm = math.sqrt(sum(abs(v) ** 2 for v in entries.values()))
                entries = {key: v / norm for key, v in entries.items()}
                for key in entries:
                    if key not in var_ids:
                        var_ids[key] = len(var_ids)
                equations.append(entries)

    nvar = len(var_ids)
    normal = np.zeros((nvar, nvar), dtype=complex)
    for entries in equations:
        keys = [var_ids[key] for key in entries]
        vals = np.array(list(entries.values()))
        normal[np.ix_(keys, keys)] += np.outer(vals.conj(), vals)

    # unknowns on the one-step fringe of the interior are touched by fewer
    # equations than interior ones; left in the normalization they admit
    # soft near-kernel directions that have nothing to do with intertwining.
    # Treat them as free variables eliminated by a Schur complement and ask
    # for unit mass on the fully-constrained core instead.
    eqset = set(eqs)
    core = [vid for (i, j), vid in var_ids.items() if i in eqset and j in eqset]
    fringe = [vid for (i, j), vid in var_ids.items() if not (i in eqset and j in eqset)]
    core.sort()
    fringe.sort()
    ncc = normal[np.ix_(core, core)]
    if fringe:
        ncf = normal[np.ix_(core, fringe)]
        nff = normal[np.ix_(fringe, fringe)]
        elim = np.linalg.lstsq(nff, ncf.conj().T, rcond=None)[0]
        schur = ncc - ncf @ elim
        schur = (schur + schur.conj().T) / 2
    else:
        elim = None
        schur = ncc
    evals, evecs = np.linalg.eigh(schur)
    vcore = evecs[:, 0]
    vec = np.zeros(nvar, dtype=complex)
    vec[core] = vcore
    if fringe:
        vec[fringe] = -(elim @ vcore)
    # the eigenvalue itself is resolution-limited near zero; the residual of
    # the extracted vector is not
    acc = 0.0
    for entries in equations:
        val = sum(v * vec[var_ids[key]] for key, v in entries.items())
        acc += abs(val) ** 2
    sigma = math.sqrt(acc)
    upos = {p: u for u, p in enumerate(unk)}
    x = np.zeros((len(unk), len(unk)), dtype=complex)
    for (i, j), vid in var_ids.items():
        x[upos[i], upos[j]] = vec[vid]
    labels = [idx[p] for p in unk]
    return {"sigma": sigma, "matrix": x, "labels": labels}


def find_intertwiner(pa, pb, window=(-20, 20), q=None, tol: float = 1e-9,
                     margin: int = 4, success: float = 1e-8) -> dict:
    """Numeric intertwiner between two weight families given as (s, r)
    parameter pairs.

    Returns {"matrix", "residual", "labels"}: matrix is the candidate X
    (labels give its index range) when the residual clears the success
    threshold, else None.  q is required (there is no exact-mode least
    squares)."""
    if q is None:
        raise AlgebraError("the intertwiner search is numeric; pass q")
    field = Field.numeric(q, tol=tol)
    w = window if isinstance(window, Window) else Window(window[0], window[1])
    ops_a = weight_rep_iso2(w, complex(pa[0]), complex(pa[1]), field)
    ops_b = weight_rep_iso2(w, complex(pb[0]), complex(pb[1]), field)
    found = intertwiner_search(ops_a, ops_b, w, margin=margin)
    ok = found["sigma"] <= success
    return {
        "matrix": found["matrix"] if ok else None,
        "residual": found["sigma"],
        "labels": found["labels"],
    }


def intertwiner_sigma(s1, r1, s2, r2, q, window=(-20, 20), margin: int = 4, tol: float = 1e-9) -> float:
    """Convenience wrapper: build both numeric weight families and search."""
    return find_intertwiner((s1, r1), (s2, r2), window, q, tol=tol, margin=margin)["residual"]


# ---------------------------------------------------------------------------
# behaviour towards q = 1


def classical_commutator_defect(h: float, c_exp: float, window: Window, r: float = 1.0) -> float:
    """Distance of the weight family at q = 1 + h, s = q^c from an honest
    classical euclidean triple: the maximum entry of the three undeformed
    commutator relations."""
    field = Field.numeric(1.0 + h, tol=1e-13)
    s = (1.0 + h) ** c_exp
    ops = weight_rep_iso2(window, s, r, field)
    i_op, t1, t2 = ops["I"], ops["T1"], ops["T2"]
    d1 = (i_op @ t2 - t2 @ i_op) - t1
    d2 = (t1 @ i_op - i_op @ t1) - t2
    d3 = t2 @ t1 - t1 @ t2
    return max(d.max_abs() for d in (d1, d2, d3))


def nonclassical_peak_entry(h: float, r: float = 1.0, j_max: int = 6) -> float:
    """Largest matrix entry of a block family at q = 1 + h; the inverse
    ladder gaps make this blow up like 1/h, which is why these families
    have no classical counterpart."""
    field = Field.numeric(1.0 + h, tol=1e-13)
    ops = nonclassical_rep(j_max, complex(r), 1, 1, field)
    return max(op.max_abs() for op in ops.values())
