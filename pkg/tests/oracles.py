"""Independent reference computations on the quantum plane A2_q (phi = Id).

Nothing here calls the package's derivation, connection or calculus code;
only Element arithmetic and constructors are shared.
"""

from homrho.scalars import ONE, Q


def d_x(f):
    """d/dx on x^a y^b is a x^(a-1) y^b."""
    alg = f.algebra
    out = alg.zero()
    for (a, b), c in f.terms.items():
        if a:
            out = out + alg.monomial((a - 1, b), c * a)
    return out


def d_y(f):
    """d/dy on x^a y^b is b q^a x^a y^(b-1): d_y passes x^a with rho(d_y, x^a) = q^a."""
    alg = f.algebra
    out = alg.zero()
    for (a, b), c in f.terms.items():
        if b:
            out = out + alg.monomial((a, b - 1), c * b * Q**a)
    return out


PARTIALS = (d_x, d_y)


def apply(X, f):
    """X = (f1, f2) acts as f1 d_x + f2 d_y."""
    return X[0] * d_x(f) + X[1] * d_y(f)


def rho_dx(k, f):
    """rho(|d_k|, |f|) for a monomial f = c x^a y^b."""
    ((a, b),) = f.terms
    # |d_x| = (-1,0), |d_y| = (0,-1); rho(u,v) = q^(u1 v2 - u2 v1)
    u = (-1, 0) if k == 0 else (0, -1)
    return Q ** (u[0] * b - u[1] * a)


def nabla_basis(gamma, lam, i, j):
    """nabla_{d_i} d_j = sum_s lam_s rho(d_s, G) G d_s with G = gamma[s][i][j]."""
    alg = gamma[0][0][0].algebra
    out = [alg.zero(), alg.zero()]
    for s in range(2):
        G = gamma[s][i][j]
        for term in G.monomial_terms():
            out[s] = out[s] + term * (lam[s] * rho_dx(s, term))
    return out


def nabla_di(gamma, lam, i, Y):
    """nabla_{d_i}(b_1 d_x + b_2 d_y) with phi = Id."""
    alg = Y[0].algebra
    out = [alg.zero(), alg.zero()]
    for j in range(2):
        for b in Y[j].monomial_terms():
            out[j] = out[j] + PARTIALS[i](b)
            nb = nabla_basis(gamma, lam, i, j)
            r = rho_dx(i, b)
            out = [out[s] + b * nb[s] * r for s in range(2)]
    return out


def curvature_basis(gamma, lam, i, j, k):
    """R(d_i, d_j) d_k = lam_i nabla_i nabla_j d_k - rho(d_i, d_j) lam_j nabla_j nabla_i d_k."""
    alg = gamma[0][0][0].algebra
    unit = [alg.zero(), alg.zero()]
    unit[k] = alg.one()
    first = nabla_di(gamma, lam, i, nabla_di(gamma, lam, j, unit))
    second = nabla_di(gamma, lam, j, nabla_di(gamma, lam, i, unit))
    u = ((-1, 0), (0, -1))
    r = Q ** (u[i][0] * u[j][1] - u[i][1] * u[j][0])
    return [first[s] * lam[i] - second[s] * (r * lam[j]) for s in range(2)]


def closed_form_gamma(alg, case):
    """The published Christoffel tables: only Gamma^1_11 and Gamma^2_22 are nonzero."""
    x_inv, y_inv = alg.gen("x", -1), alg.gen("y", -1)
    signs = {"diag(1,-1)": (-1, 1), "-Id": (1, 1), "Id": (-1, -1), "diag(-1,1)": (1, -1)}[case]
    gamma = [[[alg.zero() for _ in range(2)] for _ in range(2)] for _ in range(2)]
    gamma[0][0][0] = x_inv * signs[0]
    gamma[1][1][1] = y_inv * signs[1]
    return gamma


LAMBDAS = {"Id": (ONE, ONE), "diag(1,-1)": (ONE, -ONE), "-Id": (-ONE, -ONE), "diag(-1,1)": (-ONE, ONE)}


def hamiltonian_closed_form(f):
    """X_f = q^(1 - f1) (d_y f) d_x - q^(f2) (d_x f) d_y for a monomial f of degree (f1, f2)."""
    ((a, b),) = f.terms
    return (d_y(f) * Q ** (1 - a), -(d_x(f) * Q**b))
