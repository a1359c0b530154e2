import math

import numpy as np
import pytest

from homspace.errors import ImproperMotion, NotGMOrthogonal, WrongSignature
from homspace.motions import (
    EQUIVALENT,
    INTERCHANGEABLE,
    NON_INTERCHANGEABLE,
    Motion,
    axis_relation,
    compose,
    decompose,
    identity,
    inverse,
    is_gm_orthogonal,
    is_proper,
    main_rotation,
    parameterize,
    random_motion,
    rotation,
)
from homspace.signature import Signature, gtrig
from homspace.vectors import meta_product, product_i, vector_index

from conftest import signatures_up_to


class TestConstructors:
    def test_main_rotation_zero_is_identity(self):
        for sig in signatures_up_to(3):
            for m in range(1, sig.n + 1):
                assert np.allclose(main_rotation(m, 0.0, sig).m, np.eye(sig.n + 1))

    def test_elliptic_quarter_turn(self):
        m = main_rotation(1, math.pi / 2, Signature((1, 1))).m
        assert np.allclose(m[:2, :2], [[0, -1], [1, 0]], atol=1e-15)

    def test_hyperbolic_block(self):
        m = main_rotation(2, 0.4, Signature((0, -1))).m
        c, s, _ = gtrig(0.4, -1)
        assert np.allclose(m[1:, 1:], [[c, s], [s, c]])

    def test_all_main_rotations_gm_orthogonal(self, rng):
        for sig in signatures_up_to(4):
            for m in range(1, sig.n + 1):
                mat = main_rotation(m, float(rng.uniform(-2, 2)), sig).m
                ok, diag = is_gm_orthogonal(mat, sig)
                assert ok, (sig, m, diag)

    def test_translation_matches_block_form(self):
        # rotation in plane (0, 2) has type K_2 and its own trig family
        sig = Signature((1, -1))
        k2 = sig.pair(0, 2)
        assert k2 == -1
        t = rotation(0, 2, 0.8, sig).m
        c, s, _ = gtrig(0.8, -1)
        expected = np.eye(3)
        expected[0, 0] = c
        expected[0, 2] = -k2 * s
        expected[2, 0] = s
        expected[2, 2] = c
        assert np.allclose(t, expected)

    def test_adjacent_rotation_is_main(self, rng):
        for sig in signatures_up_to(3):
            for i in range(sig.n):
                phi = float(rng.uniform(-1, 1))
                assert rotation(i, i + 1, phi, sig).close_to(
                    main_rotation(i + 1, phi, sig), 1e-14
                )

    def test_right_triangle_recomposition(self):
        # R2(b')R1(c)R2(-a)R1(-b) collapses to the translation in plane (0,2)
        sig = Signature((-1, 1))
        b, alpha = 0.6, 0.8
        tb = math.tanh(b)
        # right-triangle relations pin c, beta', a from (b, alpha)
        c_ = math.atanh(tb / math.cos(alpha))
        k2a = math.sinh(b) * math.tan(alpha)  # T_{12}(a), type K2 = -1
        a = math.atanh(k2a)
        beta = math.atan(math.tanh(c_) * math.tan(alpha) * math.cosh(c_) / math.cosh(c_))
        beta = math.atan2(math.cosh(b) * math.sin(alpha), math.cos(alpha) / math.cosh(a))
        m = compose(
            compose(main_rotation(2, beta, sig), main_rotation(1, c_, sig)),
            compose(main_rotation(2, -alpha, sig), main_rotation(1, -b, sig)),
        )
        expected = rotation(0, 2, a, sig)
        assert m.close_to(expected, 1e-9)


class TestValidation:
    def test_identity_valid(self):
        for sig in signatures_up_to(3):
            ok, _ = is_gm_orthogonal(np.eye(sig.n + 1), sig)
            assert ok

    def test_zero_block_violation_detected(self):
        # a classical rotation violates the degenerate block structure
        theta = 0.3
        mat = np.array(
            [
                [math.cos(theta), -math.sin(theta), 0],
                [math.sin(theta), math.cos(theta), 0],
                [0, 0, 1],
            ]
        )
        ok, diag = is_gm_orthogonal(mat, Signature((0, 1)))
        assert not ok
        assert any("zero-block" in label for label, _ in diag["failures"])

    def test_random_products_valid(self, rng):
        for sig in signatures_up_to(4):
            m = random_motion(sig, rng)
            ok, diag = is_gm_orthogonal(m.m, sig, 1e-9)
            assert ok, (sig, diag)

    def test_determinant_is_unit(self, rng):
        for sig in signatures_up_to(4):
            for _ in range(3):
                m = random_motion(sig, rng)
                assert abs(abs(m.det()) - 1.0) < 1e-9


class TestGroupStructure:
    def test_compose_identity(self, rng):
        sig = Signature((0, -1, 1))
        m = random_motion(sig, rng)
        assert compose(m, identity(sig)).close_to(m, 1e-15)

    def test_rotation_addition(self, rng):
        for sig in signatures_up_to(2):
            phi, psi = rng.uniform(-0.7, 0.7, size=2)
            lhs = compose(main_rotation(1, phi, sig), main_rotation(1, psi, sig))
            assert lhs.close_to(main_rotation(1, phi + psi, sig), 1e-12)

    def test_closure(self, rng):
        sigs = signatures_up_to(3)
        for _ in range(50):
            sig = sigs[int(rng.integers(len(sigs)))]
            m = compose(random_motion(sig, rng), random_motion(sig, rng))
            ok, diag = is_gm_orthogonal(m.m, sig, 1e-8)
            assert ok, diag

    def test_signature_mismatch(self, rng):
        with pytest.raises(WrongSignature):
            compose(
                random_motion(Signature((1, 1)), rng),
                random_motion(Signature((0, 1)), rng),
            )


class TestInverse:
    def test_identity(self):
        sig = Signature((1, 0, -1))
        assert inverse(identity(sig)).close_to(identity(sig), 1e-15)

    def test_rotation_inverse_is_negative_angle(self, rng):
        for sig in signatures_up_to(2):
            phi = float(rng.uniform(-1, 1))
            assert inverse(main_rotation(1, phi, sig)).close_to(
                main_rotation(1, -phi, sig), 1e-12
            )

    def test_against_gaussian_elimination(self, rng):
        for sig in signatures_up_to(4):
            for _ in range(3):
                m = random_motion(sig, rng)
                w = inverse(m)
                assert np.max(np.abs(w.m @ m.m - np.eye(sig.n + 1))) < 1e-9
                oracle = np.linalg.inv(m.m)
                # inverse is sign-canonical; the oracle may be the other representative
                diff = min(
                    float(np.max(np.abs(w.m - oracle))),
                    float(np.max(np.abs(w.m + oracle))),
                )
                assert diff < 1e-9

    def test_block_path_on_degenerate_signature(self, rng):
        sig = Signature((1, 0, -1))
        for _ in range(20):
            m = random_motion(sig, rng)
            assert np.max(np.abs(inverse(m).m @ m.m - np.eye(4))) < 1e-9


class TestDecompose:
    def test_identity_decomposes_empty(self):
        sig = Signature((0, -1, 1))
        dec = decompose(identity(sig))
        assert dec.rotations == []
        assert np.all(dec.reflection == 1)

    def test_single_main_rotation(self):
        sig = Signature((1, 1))
        m = main_rotation(2, 0.7, sig)
        dec = decompose(m)
        assert dec.recompose().close_to(m, 1e-10)
        assert len(dec.rotations) <= 3

    def test_random_products_recompose(self, rng):
        sig = Signature((-1, 1, 1))
        for _ in range(30):
            m = random_motion(sig, rng, count=6)
            dec = decompose(m)
            assert len(dec.rotations) <= 6
            assert dec.recompose().close_to(m, 1e-9)

    def test_rotation_count_bound(self, rng):
        for sig in signatures_up_to(4):
            m = random_motion(sig, rng)
            dec = decompose(m)
            n = sig.n
            assert len(dec.rotations) <= n * (n + 1) // 2

    def test_rotation_types_match_planes(self, rng):
        sig = Signature((0, -1, 1))
        m = random_motion(sig, rng)
        for i, j, _phi, k in decompose(m).rotations:
            assert k == sig.pair(i, j)

    def test_reflection_detected(self):
        sig = Signature((0, 1))
        m = Motion(np.diag([1.0, 1.0, -1.0]), sig)
        dec = decompose(m)
        assert list(dec.reflection) == [1, 1, -1]
        assert not is_proper(m)

    def test_rejects_invalid_matrix(self):
        sig = Signature((1, 1))
        bad = np.eye(3) * 1.5
        with pytest.raises(NotGMOrthogonal):
            decompose(Motion(bad, sig))

    def test_proper_products_of_main_rotations(self, rng):
        for sig in signatures_up_to(3):
            assert is_proper(random_motion(sig, rng))


class TestParameterize:
    def test_endpoints(self, rng):
        sig = Signature((-1, 1))
        m = random_motion(sig, rng)
        assert parameterize(m, 0.0).close_to(identity(sig), 1e-12)
        assert parameterize(m, 1.0).close_to(m, 1e-9)

    def test_single_rotation_halves(self):
        sig = Signature((1, 1))
        half = parameterize(main_rotation(1, 0.8, sig), 0.5)
        assert half.close_to(main_rotation(1, 0.4, sig), 1e-12)

    def test_intermediates_are_gm_orthogonal(self, rng):
        sig = Signature((0, -1, 1))
        m = random_motion(sig, rng)
        for p in np.linspace(0, 1, 7):
            ok, diag = is_gm_orthogonal(parameterize(m, p).m, sig, 1e-9)
            assert ok, diag

    def test_improper_rejected(self):
        sig = Signature((0, 1))
        with pytest.raises(ImproperMotion):
            parameterize(Motion(np.diag([1.0, 1.0, -1.0]), sig), 0.5)


class TestAxisRelation:
    def test_examples(self):
        assert axis_relation(1, 2, Signature((0, -1))) == INTERCHANGEABLE
        assert axis_relation(1, 2, Signature((0, 1))) == EQUIVALENT
        assert axis_relation(0, 1, Signature((0, 1))) == NON_INTERCHANGEABLE


class TestInvariance:
    def test_meta_product_invariance(self, rng):
        for sig in signatures_up_to(4):
            for _ in range(3):
                x, y = rng.normal(size=(2, sig.n + 1))
                m = random_motion(sig, rng)
                before = meta_product(x, y, sig)
                after = meta_product(m.apply(x), m.apply(y), sig)
                assert abs(before - after) < 1e-9 * max(1.0, abs(before))

    def test_product_i_invariance_on_valid_support(self, rng):
        for sig in signatures_up_to(4):
            m = random_motion(sig, rng)
            for i in range(sig.n + 1):
                support = ~sig._inf_mask[i]
                x = np.where(support, rng.normal(size=sig.n + 1), 0.0)
                y = np.where(support, rng.normal(size=sig.n + 1), 0.0)
                before = product_i(x, y, i, sig)
                after = product_i(m.apply(x), m.apply(y), i, sig)
                assert abs(before - after) < 1e-9 * max(1.0, abs(before))

    def test_decomposition_angles_recover_main_rotation(self, rng):
        sig = Signature((0, -1))
        phi = 0.83
        dec = decompose(main_rotation(2, phi, sig))
        live = [r for r in dec.rotations if abs(r[2]) > 1e-12]
        assert len(live) == 1
        i, j, angle, k = live[0]
        assert (i, j) == (1, 2)
        assert abs(abs(angle) - phi) < 1e-12
        assert k == -1
