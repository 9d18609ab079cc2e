import numpy as np
import pytest

from comovement import (
    FactorSpec,
    InputError,
    agglomerate,
    correlate,
    correlation_distance,
    cut_at_correlation,
    generate_blocks,
    generate_one_factor,
    panel_returns,
    relative_participation_ratio,
    to_price_panel,
)


def test_zero_gamma_has_near_zero_correlations():
    rp = generate_one_factor(FactorSpec(n=12, t=2500, gamma=0.0, seed=1))
    C = correlate(rp)
    assert np.abs(C.offdiagonal()).max() <= 4.0 / np.sqrt(2500)  # CLT bound


def test_gamma_one_gives_perfect_correlation():
    rp = generate_one_factor(FactorSpec(n=6, t=200, gamma=1.0, seed=2))
    C = correlate(rp)
    np.testing.assert_allclose(C.offdiagonal(), 1.0, atol=1e-12)


def test_gamma_half_mean_correlation():
    rp = generate_one_factor(FactorSpec(n=40, t=4000, gamma=0.5, seed=3))
    C = correlate(rp)
    assert abs(C.offdiagonal().mean() - 0.5) < 0.03


def test_generation_is_deterministic():
    spec = FactorSpec(n=9, t=120, gamma=0.4, seed=77)
    np.testing.assert_array_equal(
        generate_one_factor(spec).returns, generate_one_factor(spec).returns
    )


def test_single_block_equals_one_factor():
    blocks = generate_blocks(FactorSpec(n=7, t=90, seed=5, blocks=[(7, 0.6)]))
    plain = generate_one_factor(FactorSpec(n=7, t=90, gamma=0.6, seed=5))
    np.testing.assert_array_equal(blocks.returns, plain.returns)


def test_two_blocks_recovered_by_clustering():
    spec = FactorSpec(n=12, t=2000, seed=8, blocks=[(6, 0.9), (6, 0.9)])
    C = correlate(generate_blocks(spec))
    tree = agglomerate(correlation_distance(C))
    out = cut_at_correlation(tree, 0.3, C.labels)
    np.testing.assert_array_equal(out.community[:6], 0)
    np.testing.assert_array_equal(out.community[6:], 1)


def test_singleton_blocks_are_near_independent():
    spec = FactorSpec(n=40, t=3000, seed=10, blocks=[(1, 0.0)] * 40)
    C = correlate(generate_blocks(spec))
    assert np.abs(C.offdiagonal()).max() <= 4.0 / np.sqrt(3000)
    # delta noise scale at N=40 is ~0.03 (pilot-calibrated); 0.1 gives 3x margin
    delta, _ = relative_participation_ratio(C, 20, seed=4)
    assert abs(delta) <= 0.1


def test_generated_panels_are_normalized():
    rp = generate_blocks(FactorSpec(n=8, t=150, seed=11, blocks=[(5, 0.7), (3, 0.2)]))
    np.testing.assert_allclose(rp.returns.mean(axis=1), 0.0, atol=1e-12)
    np.testing.assert_allclose(rp.returns.std(axis=1), 1.0, atol=1e-12)


def test_price_panel_round_trip():
    rp = generate_one_factor(FactorSpec(n=5, t=300, gamma=0.3, seed=21))
    panel = to_price_panel(rp)
    assert panel.n_dates == rp.n_steps + 1
    assert np.all(panel.prices > 0)
    back = panel_returns(panel)
    assert back.labels == rp.labels
    np.testing.assert_allclose(back.returns, rp.returns, atol=1e-12)


def test_factor_spec_validation():
    with pytest.raises(InputError):
        FactorSpec(n=1, t=100)
    with pytest.raises(InputError):
        FactorSpec(n=4, t=100, gamma=1.5)
    with pytest.raises(InputError):
        FactorSpec(n=4, t=100, blocks=[(3, 0.5)])  # sizes must sum to n
    with pytest.raises(InputError):
        generate_blocks(FactorSpec(n=4, t=100, gamma=0.5))  # blocks missing
    with pytest.raises(InputError):
        generate_one_factor(FactorSpec(n=4, t=100, blocks=[(4, 0.5)]))
