"""Closed-form predictions for the directed incremental-edge models: power-law exponent, degree trajectories,
maximal degrees, leaf fraction and per-region degree sums.

The regional and locality parameters never enter these formulas; the geographic model shares every prediction
with its non-geographic counterpart.
"""
import math

import numpy
from scipy.integrate import solve_ivp


class TheoryException(Exception):
    """Names a new type of exception specific to model predictions."""


def _check_domain(m, p):
    if not m > 1:
        raise TheoryException(f"Predictions require m > 1, got m={m}")
    if not 0 <= p <= 1:
        raise TheoryException(f"Predictions require 0 <= p <= 1, got p={p}")


class TheoryConstants:
    """Class object holding the constants derived from (m, p)."""

    def __init__(self, m, p):
        """The constructor for TheoryConstants class.

            Args:
                m (float):
                    Mean number of edges per step, greater than 1.
                p (float):
                    Symmetric arrangement probability, 0 to 1.
        """
        _check_domain(m, p)
        self.m = m
        self.p = p
        self.A = math.sqrt(p ** 2 + 4 * m * (m - 1))
        self.B = 2 * (1 + p) * m - p ** 2
        self.C = self.B / self.A
        self.D = p / (4 * m * (1 + p))
        self.G = self.D * self.C + 0.5 + self.D * self.A
        self.lambda1 = (p * (2 * m - 1) + self.A) / (2 * m * (1 + p))
        self.lambda2 = (p * (2 * m - 1) - self.A) / (2 * m * (1 + p))

    def __str__(self):
        return str(vars(self))

    def to_dict(self):
        """Returns the constants as a dictionary."""
        return dict(vars(self))

    def coefficient_matrix(self):
        """Returns the matrix M of d(k, y)/d(ln t) = M (k, y)."""
        m, p = self.m, self.p
        return numpy.array([[p * (m - 1) / (m * (1 + p)), 1 / (1 + p)],
                            [(m - 1) / (m * (1 + p)), p / (1 + p)]])


def constants(m, p):
    """Returns the TheoryConstants for (m, p). Raises TheoryException when m <= 1."""
    return TheoryConstants(m, p)


class TrajectorySolution:
    """Exact solution of the mean-field degree equations for a node born with in-degree p and out-degree 1.

    The state is (k, y) = sum_i coefficients[i] * eigenvectors[:, i] * tau ** eigenvalues[i], where tau is the
    node's age factor t / t_i.
    """

    def __init__(self, m, p):
        self.constants = constants(m, p)
        eigenvalues, eigenvectors = numpy.linalg.eig(self.constants.coefficient_matrix())
        order = numpy.argsort(-eigenvalues.real)
        self.eigenvalues = eigenvalues.real[order]
        self.eigenvectors = eigenvectors.real[:, order]
        self.initial_state = numpy.array([p, 1.0])
        self.coefficients = numpy.linalg.solve(self.eigenvectors, self.initial_state)

    def evaluate(self, t_over_ti):
        """Returns (k, y) at age factor t_over_ti."""
        modes = self.coefficients * numpy.power(float(t_over_ti), self.eigenvalues)
        k, y = self.eigenvectors @ modes
        return float(k), float(y)

    def derivative(self, t_over_ti):
        """Returns (dk/dtau, dy/dtau) at age factor t_over_ti."""
        tau = float(t_over_ti)
        modes = self.coefficients * self.eigenvalues * numpy.power(tau, self.eigenvalues - 1)
        dk, dy = self.eigenvectors @ modes
        return float(dk), float(dy)


def degree_trajectory(m, p, t_over_ti):
    """Mean-field expected in-degree and out-degree of a node aged by the factor t / t_i.

        Args:
            m (float):
                Mean number of edges per step, greater than 1.
            p (float):
                Symmetric arrangement probability.
            t_over_ti (float):
                Ratio of the present time to the node's birth time, at least 1.

        Returns:
            tuple: (k, y) expected in-degree and out-degree.
    """
    if t_over_ti < 1:
        raise TheoryException(f"t / t_i must be at least 1, got {t_over_ti}")

    return TrajectorySolution(m, p).evaluate(t_over_ti)


def integrate_degree_trajectory(m, p, t_over_ti, rtol=1e-11, atol=1e-12):
    """Integrates the mean-field degree equations numerically. Independent check on degree_trajectory.

        Args:
            m (float):
                Mean number of edges per step, greater than 1.
            p (float):
                Symmetric arrangement probability.
            t_over_ti (float):
                Ratio of the present time to the node's birth time, at least 1.
            rtol (float):
                Relative tolerance handed to scipy's integrator.
            atol (float):
                Absolute tolerance handed to scipy's integrator.

        Returns:
            tuple: (k, y) expected in-degree and out-degree.
    """
    if t_over_ti < 1:
        raise TheoryException(f"t / t_i must be at least 1, got {t_over_ti}")

    matrix = constants(m, p).coefficient_matrix()
    if t_over_ti == 1:
        return float(p), 1.0

    # Integrating in log-time keeps the system autonomous and the step sizes even
    solution = solve_ivp(lambda _, state: matrix @ state, (0.0, math.log(t_over_ti)), [p, 1.0],
                         method='DOP853', rtol=rtol, atol=atol)
    if not solution.success:
        raise TheoryException(f"Numerical integration failed: {solution.message}")

    return float(solution.y[0, -1]), float(solution.y[1, -1])


def expected_max_degrees(m, p, t):
    """Expected in-degree and out-degree of the oldest node (t_i = 1) at time t.

        Returns:
            tuple: (k_max, y_max)
    """
    if t < 1:
        raise TheoryException(f"t must be at least 1, got {t}")

    return degree_trajectory(m, p, t)


def leaf_fraction(p):
    """Expected fraction of leaves, (1 + p)(1 - p) / (2 + p)."""
    if not 0 <= p <= 1:
        raise TheoryException(f"p must lie in [0, 1], got {p}")

    return (1 + p) * (1 - p) / (2 + p)


def leaf_survival_probability(p, t_i, n):
    """Probability that the node born at time t_i is still a leaf at time n, (1 - p)(t_i / n) ** (1 / (1 + p))."""
    if not 0 <= p <= 1:
        raise TheoryException(f"p must lie in [0, 1], got {p}")
    if not 1 <= t_i <= n:
        raise TheoryException(f"Birth time must lie in [1, n], got t_i={t_i}, n={n}")

    return (1 - p) * (t_i / n) ** (1 / (1 + p))


def expected_leaves(p, n):
    """Expected number of leaves in an n-node graph."""
    return n * leaf_fraction(p)


def region_degree_sums(m, p, t, region_weights):
    """Expected in-degree and out-degree sums per region at time t.

        Args:
            m (float):
                Mean number of edges per step.
            p (float):
                Symmetric arrangement probability.
            t (float):
                Time (number of steps).
            region_weights (list[float]):
                Region distribution; normalized if it does not sum to 1.

        Returns:
            list[tuple]: (I_j, O_j) per region, both equal to P_j (1 + p) m t.
    """
    total = float(sum(region_weights))
    if total <= 0:
        raise TheoryException("Region weights need a positive sum")

    sums = []
    for weight in region_weights:
        degree_sum = weight / total * (1 + p) * m * t
        sums.append((degree_sum, degree_sum))

    return sums


def region_degree_sum_trajectory(m, p, alpha, weight, t):
    """Numerically solves the per-region degree sum equations, starting from empty regions at t = 1.

    The locality parameter appears in the equations but cancels from the solution: the sums approach
    weight * (1 + p) * m * t for every alpha.

        Returns:
            tuple: (I_j, O_j) at time t.
    """
    if t < 1:
        raise TheoryException(f"t must be at least 1, got {t}")

    inflow = weight * (1 + p) + weight * alpha * (m - 1) * (1 + p)
    rate = (1 - alpha) * (m - 1) / (m * (1 + p))

    def equations(time, state):
        in_sum, out_sum = state
        return [inflow + rate * (out_sum + p * in_sum) / time,
                inflow + rate * (in_sum + p * out_sum) / time]

    solution = solve_ivp(equations, (1.0, float(t)), [0.0, 0.0], method='DOP853', rtol=1e-10, atol=1e-10)
    if not solution.success:
        raise TheoryException(f"Numerical integration failed: {solution.message}")

    return float(solution.y[0, -1]), float(solution.y[1, -1])


class Prediction:
    """Class object holding the predicted exponent, leaf fraction and maximal degrees for (m, p)."""

    def __init__(self, m, p, nodes=None):
        """The constructor for Prediction class.

            Args:
                m (float):
                    Mean number of edges per step, greater than 1.
                p (float):
                    Symmetric arrangement probability.
                nodes (int):
                    Optional graph size for the maximal degree predictions.
        """
        self.constants = constants(m, p)
        self.gamma = 1 + 1 / self.constants.lambda1
        self.eta = self.gamma - 1
        self.leaf_fraction = leaf_fraction(p)
        self.nodes = nodes
        self.max_in_degree = None
        self.max_out_degree = None
        self.expected_leaves = None

        if nodes is not None:
            self.max_in_degree, self.max_out_degree = expected_max_degrees(m, p, nodes)
            self.expected_leaves = expected_leaves(p, nodes)

    def to_dict(self):
        """Returns the prediction, constants included, as a JSON-ready dictionary."""
        return {
            'constants': self.constants.to_dict(),
            'gamma': self.gamma,
            'eta': self.eta,
            'leaf_fraction': self.leaf_fraction,
            'nodes': self.nodes,
            'max_in_degree': self.max_in_degree,
            'max_out_degree': self.max_out_degree,
            'expected_leaves': self.expected_leaves,
        }


def predict(m, p, nodes=None):
    """Returns the Prediction for (m, p), with maximal degrees when nodes is given."""
    return Prediction(m, p, nodes)
