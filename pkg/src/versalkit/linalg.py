"""Dense exact linear algebra over a coefficient field (no floats anywhere)."""


def rref(rows, ncols, field, track=False):
    """Reduced row echelon form.

    Returns (reduced_rows, pivot_columns) and, with ``track=True``, a third
    item: for each reduced row the combination of input rows producing it.
    Zero rows are dropped.
    """
    work = [list(r) for r in rows]
    trans = [[field.one if i == j else field.zero for j in range(len(rows))]
             for i in range(len(rows))] if track else None
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(work)):
            if not field.is_zero(work[i][col]):
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        if track:
            trans[r], trans[piv] = trans[piv], trans[r]
        inv = field.inv(work[r][col])
        work[r] = [field.mul(inv, v) for v in work[r]]
        if track:
            trans[r] = [field.mul(inv, v) for v in trans[r]]
        for i in range(len(work)):
            if i != r and not field.is_zero(work[i][col]):
                f = work[i][col]
                work[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(work[i], work[r])]
                if track:
                    trans[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(trans[i], trans[r])]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    out_rows = work[:r]
    if track:
        return out_rows, pivots, trans[:r]
    return out_rows, pivots


def reduce_against(vec, echelon_rows, pivots, field, track=False):
    """Subtract echelon rows to clear pivot columns of ``vec``.

    Returns the residual and, when tracking, the coefficients used per row.
    """
    v = list(vec)
    coeffs = [field.zero] * len(echelon_rows) if track else None
    for i, col in enumerate(pivots):
        c = v[col]
        if field.is_zero(c):
            continue
        row = echelon_rows[i]
        v = [field.sub(a, field.mul(c, b)) for a, b in zip(v, row)]
        if track:
            coeffs[i] = c
    if track:
        return v, coeffs
    return v


def nullspace(rows, ncols, field):
    """Basis of the right kernel of the matrix with the given rows."""
    red, pivots = rref(rows, ncols, field)
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free_cols:
        vec = [field.zero] * ncols
        vec[fc] = field.one
        for i, pc in enumerate(pivots):
            vec[pc] = field.neg(red[i][fc])
        basis.append(vec)
    return basis


def solve(rows, rhs, ncols, field):
    """One solution x of A x = b given A's rows, or None when inconsistent."""
    aug = [list(r) + [v] for r, v in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1, field)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = red[i][ncols]
    return x
