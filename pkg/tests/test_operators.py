import numpy as np
import pytest

from electroseis import operators as ops


def test_fornberg_reproduces_standard_stencils():
    w = ops.fornberg_weights(0.0, np.array([-1.0, 0.0, 1.0]), 2)
    assert np.allclose(w[1], [-0.5, 0.0, 0.5])
    assert np.allclose(w[2], [1.0, -2.0, 1.0])
    # one-sided first derivative, 3 points
    w = ops.fornberg_weights(0.0, np.array([0.0, 1.0, 2.0]), 1)
    assert np.allclose(w[1], [-1.5, 2.0, -0.5])


@pytest.mark.parametrize("order", [1, 2, 3, 4, 5])
def test_derivative_1d_exact_on_polynomials(order):
    # order-2 stencils differentiate x^(order+1) exactly up to round-off
    n = 24
    h = 0.1
    x = h * np.arange(n)
    f = x ** (order + 1)
    expected = np.prod(np.arange(order + 1, 1, -1.0)) * x
    got = ops.derivative_1d(f.reshape(n, 1, 1), order, h, axis=0)[:, 0, 0]
    assert np.allclose(got, expected, rtol=1e-8, atol=1e-6)


def test_derivative_1d_second_order_convergence():
    errs = []
    for n in (32, 64):
        x = np.linspace(0.0, 1.0, n + 1)
        f = np.sin(2 * np.pi * x).reshape(-1, 1, 1)
        d = ops.derivative_1d(f, 1, x[1] - x[0], axis=0)[:, 0, 0]
        errs.append(np.max(np.abs(d - 2 * np.pi * np.cos(2 * np.pi * x))))
    assert np.log2(errs[0] / errs[1]) > 1.8


def test_derivative_1d_short_axis_raises():
    with pytest.raises(ValueError):
        ops.derivative_1d(np.zeros((4, 2, 2)), 5, 0.1, axis=0)


def test_staggered_curl_identities(rng):
    n = (6, 7, 5)
    h = np.array([0.2, 0.15, 0.3])
    e = [rng.standard_normal(s) for s in ops.edge_shapes(n)]
    f = [rng.standard_normal(s) for s in ops.face_shapes(n)]
    # div(curl(edge field)) vanishes identically on cells
    div_ce = ops.divergence_faces_to_cells(ops.curl_edges_to_faces(e, h), h)
    assert np.max(np.abs(div_ce)) < 1e-12
    # div(curl(face field)) vanishes at interior nodes
    div_cf = ops.divergence_edges_to_interior_nodes(ops.curl_faces_to_edges(f, h, n), h)
    assert np.max(np.abs(div_cf)) < 1e-12


def test_staggered_curl_adjointness(rng):
    # <curl_E e, f>_faces == <e, curl_F f>_edges for tangential-zero e
    n = (6, 6, 6)
    h = np.array([0.1, 0.12, 0.09])
    e = [rng.standard_normal(s) for s in ops.edge_shapes(n)]
    ops.zero_tangential_edges(e)
    f = [rng.standard_normal(s) for s in ops.face_shapes(n)]
    lhs = sum(np.sum(c * ff) for c, ff in zip(ops.curl_edges_to_faces(e, h), f))
    rhs = sum(np.sum(ee * c) for ee, c in zip(e, ops.curl_faces_to_edges(f, h, n)))
    assert abs(lhs - rhs) < 1e-10 * (abs(lhs) + 1.0)


def test_node_curl_of_gradient_vanishes(rng):
    n = 16
    x = np.linspace(0, 1, n + 1)
    X, Y, Z = np.meshgrid(x, x, x, indexing="ij")
    f = np.sin(np.pi * X) * np.cos(np.pi * Y) * Z**2
    h = np.full(3, x[1] - x[0])
    g = ops.gradient_nodes(f, h)
    # analytic gradient is curl-free; discrete curl of the discrete gradient
    # is consistent at O(h^2)
    c = ops.curl_nodes(g, h)
    assert np.max(np.abs(c)) < 0.3  # much smaller than |grad| scale ~ pi^2


def test_interpolation_preserves_constants():
    n = (5, 6, 4)
    p = np.full(tuple(m + 1 for m in n), 3.7)
    for arr in ops.nodes_to_edges(p) + ops.nodes_to_faces(p):
        assert np.allclose(arr, 3.7)
    e = [np.full(s, 2.5) for s in ops.edge_shapes(n)]
    assert np.allclose(ops.edges_to_nodes(e), 2.5)
    f = [np.full(s, -1.25) for s in ops.face_shapes(n)]
    assert np.allclose(ops.faces_to_nodes(f), -1.25)


def test_integrate_nodes_polynomial():
    n = 20
    x = np.linspace(0, 1, n + 1)
    X, Y, Z = np.meshgrid(x, x, x, indexing="ij")
    h = np.full(3, 1.0 / n)
    # integral of x*y over unit cube = 1/4; trapezoid is exact for bilinear
    assert ops.integrate_nodes(X * Y, h) == pytest.approx(0.25, rel=1e-12)


def test_integrate_space_time_constant():
    vals = np.ones((2, 5, 5, 5, 9))
    h = np.full(3, 0.25)
    total = ops.integrate_space_time(vals, h, 0.125)
    assert total == pytest.approx(2 * 1.0 * 1.0, rel=1e-12)
