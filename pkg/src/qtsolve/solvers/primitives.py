"""General-solution building blocks used by every system solver.

Each primitive handles one classical linear tensor equation over H:

  * A *_N X = E                        (one-sided)
  * X *_M B = E                        (one-sided)
  * A *_N X *_M B = E                  (two-sided)
  * A *_N W = E1,  W *_M B = E2        (common one-sided pair)
  * A *_N U + V *_M B = C              (sum form)
  * A *_N X *_M B + C *_N Y *_M D = E  (two-unknown pair form)

For each we provide the solvability conditions (tensors that must vanish)
and the closed-form general solution parametrized by arbitrary tensors drawn
from a ParamBag. Everything downstream (the coupled systems) reduces to
chains of these.
"""

from __future__ import annotations

from ..qlinalg import PinvOptions, pinv, proj_left, proj_right
from ..qtensor import QTensor, add, frob_norm, sub
from ..qtensor import einstein_product as ein
from .types import ParamBag


def chain(*ts: QTensor) -> QTensor:
    """Left-to-right Einstein product of the given tensors."""
    out = ts[0]
    for t in ts[1:]:
        out = ein(out, t)
    return out


def scale_of(*ts: QTensor) -> float:
    """Largest Frobenius norm among the tensors entering a condition."""
    return max(frob_norm(t) for t in ts)


# -- one-sided and two-sided equations --------------------------------------


def one_sided_left_conditions(a, e, opts):
    ra = proj_right(a, opts)
    return [(chain(ra, e), scale_of(ra, e))]


def one_sided_left_solve(a, e, param, opts):
    """A X = E;  X = A^+ E + L_A * param."""
    return add(chain(pinv(a, opts), e), chain(proj_left(a, opts), param))


def one_sided_right_conditions(b, e, opts):
    lb = proj_left(b, opts)
    return [(chain(e, lb), scale_of(e, lb))]


def one_sided_right_solve(b, e, param, opts):
    """X B = E;  X = E B^+ + param * R_B."""
    return add(chain(e, pinv(b, opts)), chain(param, proj_right(b, opts)))


def two_sided_conditions(a, b, e, opts):
    ra = proj_right(a, opts)
    lb = proj_left(b, opts)
    return [(chain(ra, e), scale_of(ra, e)), (chain(e, lb), scale_of(e, lb))]


def two_sided_solve(a, b, e, p1, p2, opts):
    """A X B = E;  X = A^+ E B^+ + L_A p1 + p2 R_B."""
    x = chain(pinv(a, opts), e, pinv(b, opts))
    x = add(x, chain(proj_left(a, opts), p1))
    return add(x, chain(p2, proj_right(b, opts)))


def common_pair_conditions(a, e1, b, e2, opts):
    """A W = E1 and W B = E2: the two one-sided conditions plus the
    compatibility A E2 = E1 B."""
    ra = proj_right(a, opts)
    lb = proj_left(b, opts)
    compat = sub(chain(a, e2), chain(e1, b))
    return [
        (chain(ra, e1), scale_of(ra, e1)),
        (chain(e2, lb), scale_of(e2, lb)),
        (compat, scale_of(chain(a, e2), chain(e1, b))),
    ]


def common_pair_solve(a, e1, b, e2, param, opts):
    """W = A^+ E1 + L_A E2 B^+ + L_A param R_B."""
    la = proj_left(a, opts)
    w = add(chain(pinv(a, opts), e1), chain(la, e2, pinv(b, opts)))
    return add(w, chain(la, param, proj_right(b, opts)))


# -- A U + V B = C ------------------------------------------------------------


def sum_conditions(a, b, c, opts):
    ra = proj_right(a, opts)
    lb = proj_left(b, opts)
    return [(chain(ra, c, lb), scale_of(ra, c, lb))]


def sum_solve(a, b, c, h1, h2, h3, opts):
    """General solution of A U + V B = C.

    U = A^+ C - A^+ h2 B + L_A h1
    V = R_A C B^+ + A A^+ h2 + h3 R_B
    """
    ap = pinv(a, opts)
    u = sub(chain(ap, c), chain(ap, h2, b))
    u = add(u, chain(proj_left(a, opts), h1))
    v = add(chain(proj_right(a, opts), c, pinv(b, opts)), chain(a, ap, h2))
    v = add(v, chain(h3, proj_right(b, opts)))
    return u, v


def sum_param_shapes(a, b, c):
    """Conforming shapes for (h1, h2, h3)."""
    return ((a.right, c.right), (c.left, b.left), (c.left, b.left))


# -- the two-unknown pair equation -------------------------------------------


class PairOperators:
    """Derived operators for A X B + C Y D = E: M = R_A C, N = D L_B,
    S = C L_M, cached together with the projectors the formulas reuse."""

    def __init__(self, a, b, c, d, opts: PinvOptions | None):
        self.a, self.b, self.c, self.d = a, b, c, d
        self.opts = opts
        self.ra = proj_right(a, opts)
        self.lb = proj_left(b, opts)
        self.m = ein(self.ra, c)
        self.n = ein(d, self.lb)
        self.lm = proj_left(self.m, opts)
        self.s = ein(c, self.lm)
        self.rc = proj_right(c, opts)
        self.ld = proj_left(d, opts)
        self.rn = proj_right(self.n, opts)
        self.ls = proj_left(self.s, opts)
        self.la = proj_left(a, opts)
        self.rb = proj_right(b, opts)
        self.rm = proj_right(self.m, opts)

    def conditions(self, e):
        """The four vanishing tensors: R_M R_A E, E L_B L_N, R_A E L_D,
        R_C E L_B."""
        return [
            (chain(self.rm, self.ra, e), scale_of(self.rm, self.ra, e)),
            (chain(e, self.lb, proj_left(self.n, self.opts)), scale_of(e, self.lb, self.n)),
            (chain(self.ra, e, self.ld), scale_of(self.ra, e, self.ld)),
            (chain(self.rc, e, self.lb), scale_of(self.rc, e, self.lb)),
        ]

    def outer_conditions(self, e):
        """Conditions 1, 2, 4 only: the subset that stays necessary when the
        right-hand side still contains a deferred inner block (condition 3,
        R_A E L_D, turns into that block's own equation)."""
        c = self.conditions(e)
        return [c[0], c[1], c[3]]

    def y_particular(self, e):
        """Particular Y with M Y D = R_A E and C Y N = E L_B:
        Y0 = M^+ E D^+ + S^+ E N^+ - S^+ C M^+ E D^+ N N^+."""
        opts = self.opts
        dp = pinv(self.d, opts)
        mp, np_, sp = pinv(self.m, opts), pinv(self.n, opts), pinv(self.s, opts)
        return add(chain(mp, e, dp),
                   sub(chain(sp, e, np_), chain(sp, self.c, mp, e, dp, self.n, np_)))

    def solve(self, e, u1, u2, u3, u4, u5):
        """General solution (X, Y); u2 is the parameter shared between the
        two formulas.

        Y extends the particular part with its homogeneous terms, and X
        comes from back-substitution, X = A^+ (E - C Y D) B^+ plus its own
        homogeneous terms. (Equivalent to the fully expanded closed form;
        the back-substituted shape keeps the parameter coupling exact.)
        """
        opts = self.opts
        ap, bp = pinv(self.a, opts), pinv(self.b, opts)
        y = self.y_particular(e)
        y = add(y, chain(self.lm, self.ls, u1))
        y = add(y, chain(self.lm, u2, self.rn))
        y = add(y, chain(u3, proj_right(self.d, opts)))
        x = chain(ap, sub(e, chain(self.c, y, self.d)), bp)
        x = add(x, chain(self.la, u4))
        x = add(x, chain(u5, self.rb))
        return x, y

    def x_shape(self):
        return (self.a.right, self.b.left)

    def y_shape(self):
        return (self.c.right, self.d.left)

    def solve_from_bag(self, e, bag: ParamBag, names):
        """Draw (u1..u5) by name from the bag with conforming shapes."""
        xl, xr = self.x_shape()
        yl, yr = self.y_shape()
        u1 = bag.get(names[0], yl, yr)
        u2 = bag.get(names[1], yl, yr)
        u3 = bag.get(names[2], yl, yr)
        u4 = bag.get(names[3], xl, xr)
        u5 = bag.get(names[4], xl, xr)
        return self.solve(e, u1, u2, u3, u4, u5)
