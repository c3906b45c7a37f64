import warnings
import numpy as np

from src.theta.core import DEFAULT_EPS_REQ, evaluate_batch
from src.theta.riemann_matrix import reduce_point
from src.theta.errors import ConvergenceError

NEWTON_TOL = 1e-10
MAX_ITER = 200
MAX_RESTARTS = 20
MAX_HALVINGS = 30

def _residual(z, tau, eps_req, gradient=False):
    out = evaluate_batch(z.reshape(1, -1), tau, eps_req=eps_req, gradient=gradient)
    return out, out.residual[0]

def _newton_line(z, d, tau, tol, max_iter, eps_req):
    """ Damped Newton iteration on t -> theta(z + t d)

    Returns:
        z (np.array): last iterate reduced mod the lattice. size=[g]
        history (list): normalized residuals, strictly decreasing
        converged (bool): last residual <= tol
    """
    history = []
    for _ in range(max_iter):
        out, residual = _residual(z, tau, eps_req, gradient=True)
        history.append(residual)
        if residual <= tol:
            return z, history, True

        slope = out.grad[0] @ d
        if slope == 0:
            break
        step = -out.value[0] / slope * d

        # halve the step until the residual decreases
        t = 1.
        for _ in range(MAX_HALVINGS):
            z_new = z + t * step
            _, residual_new = _residual(z_new, tau, eps_req)
            if residual_new < residual:
                break
            t /= 2
        else:
            break
        z = reduce_point(z_new, tau)
    return z, history, False

def find_on_theta(
    tau, seed, tol=NEWTON_TOL, max_iter=MAX_ITER, max_restarts=MAX_RESTARTS,
    eps_req=DEFAULT_EPS_REQ, return_history=False
    ):
    """ Find a point w with theta(w, tau) = 0 by damped Newton along random complex lines

    Args:
        tau (RiemannMatrix): period matrix
        seed (int): generator seed for the starting points and directions
        tol (float, optional): bound on |theta(w)| over the dominant summand. Default=1e-10
        max_iter (int, optional): iterations per line. Default=200
        max_restarts (int, optional): number of lines tried. Default=20
        eps_req (float, optional): requested theta accuracy. Default=1e-12
        return_history (bool, optional): also return the residual history. Default=False

    Returns:
        w (np.array): point on Theta reduced mod the lattice. size=[g]
        history (list): residuals of the successful line, only if return_history
    """
    rng = np.random.default_rng(seed)
    g = tau.g
    for restart in range(max_restarts):
        z0 = tau.lattice_point(rng.uniform(-0.5, 0.5, g), rng.uniform(-0.5, 0.5, g))
        d = rng.standard_normal(g) + 1j * rng.standard_normal(g)
        d /= np.linalg.norm(d)

        w, history, converged = _newton_line(z0, d, tau, tol, max_iter, eps_req)
        if converged:
            w = reduce_point(w, tau)
            return (w, history) if return_history else w
        warnings.warn(
            f"newton line {restart} stopped at residual {history[-1]:.2e}, restarting",
            RuntimeWarning
        )
    raise ConvergenceError(
        f"no zero of theta found after {max_restarts} restarts of {max_iter} iterations"
    )

def through_torsion_translate(tau, x, seed, **kwargs):
    """ Translate a with x on t_a^* Theta, a = w - x for a point w on Theta

    Args:
        tau (RiemannMatrix): period matrix
        x (TorsionPoint): prescribed torsion point
        seed (int): seed passed to find_on_theta

    Returns:
        a (np.array): translate. size=[g]
    """
    w = find_on_theta(tau, seed, **kwargs)
    return w - x.coordinates(tau)
