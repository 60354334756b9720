import numpy as np
import pytest

from draftbench.nnet import (
    Adam,
    TrainingError,
    forward,
    gradient_check,
    init_network,
    leaky_relu,
    loss_and_grad,
    softmax_cross_entropy,
)


def small_net(n_hidden=3, dropout=0.5, dtype=np.float64, seed=1, in_size=5, out_size=4):
    net = init_network(in_size, out_size, hidden_width=6, n_hidden=n_hidden, seed=seed, dtype=dtype)
    net.dropout_rate = dropout
    return net


def test_leaky_relu_values():
    x = np.array([-2.0, 0.0, 3.0])
    assert np.allclose(leaky_relu(x, 0.01), [-0.02, 0.0, 3.0])


def test_zero_network_zero_logits():
    net = small_net(dropout=0.0)
    for arr in net.parameters().values():
        arr[...] = 0
    logits, _ = forward(net, np.random.default_rng(0).normal(size=(3, 5)), mode="infer")
    assert np.allclose(logits, 0.0)


def test_uniform_logits_loss_is_log_s():
    logits = np.zeros((7, 265))
    targets = np.arange(7) % 265
    loss, _ = softmax_cross_entropy(logits, targets)
    assert loss == pytest.approx(np.log(265), abs=1e-9)


def test_confident_logits_loss_vanishes():
    targets = np.array([2, 0])
    logits = np.full((2, 4), -50.0)
    logits[0, 2] = 50.0
    logits[1, 0] = 50.0
    loss, _ = softmax_cross_entropy(logits, targets)
    assert loss < 1e-8


def test_batchnorm_train_statistics():
    net = small_net(dropout=0.0, n_hidden=1)
    dense, bn = net.hidden[0]
    bn.scale[...] = 1.7
    bn.shift[...] = -0.3
    x = np.random.default_rng(5).normal(size=(512, 5), scale=3.0)
    z = x @ dense.weights.T + dense.bias
    mu = z.mean(axis=0)
    inv = 1.0 / np.sqrt(z.var(axis=0) + bn.eps)
    normalized = bn.scale * (z - mu) * inv + bn.shift
    assert np.allclose(normalized.mean(axis=0), -0.3, atol=1e-3)
    assert np.allclose(normalized.std(axis=0), 1.7, atol=1e-3)


def test_running_stats_updated_only_when_asked():
    net = small_net(dropout=0.0, n_hidden=1)
    bn = net.hidden[0][1]
    x = np.random.default_rng(2).normal(size=(64, 5))
    before = bn.running_mean.copy()
    forward(net, x, mode="train", rng=np.random.default_rng(0), update_running=False)
    assert np.array_equal(bn.running_mean, before)
    forward(net, x, mode="train", rng=np.random.default_rng(0), update_running=True)
    assert not np.array_equal(bn.running_mean, before)


def test_dropout_statistics():
    # inverted dropout: ~half the activations zeroed, survivors doubled, so the
    # expected output equals the dropout-free output. One hidden block + linear
    # head keeps the expectation exact through the rest of the network.
    net = small_net(dropout=0.5, n_hidden=1)
    rng = np.random.default_rng(9)
    x = np.random.default_rng(1).normal(size=(4, 5))
    net.dropout_rate = 0.0
    reference, _ = forward(net, x, mode="train", rng=rng, update_running=False)
    net.dropout_rate = 0.5
    samples = np.stack(
        [forward(net, x, mode="train", rng=rng, update_running=False)[0]
         for _ in range(10_000)]
    )
    deviation = np.linalg.norm(samples.mean(axis=0) - reference)
    assert deviation / np.linalg.norm(reference) < 0.02


def test_dropout_mask_rate_and_scale():
    net = small_net(dropout=0.5, n_hidden=1)
    bn = net.hidden[0][1]
    bn.shift[...] = 1.0  # keep activations positive so zeros are dropout's
    x = np.zeros((2000, 5))
    logits_train, cache = forward(net, x, mode="train", rng=np.random.default_rng(3))
    mask = cache["blocks"][0]["mask"]
    assert set(np.unique(mask)) == {0.0, 2.0}
    assert abs((mask == 0).mean() - 0.5) < 0.02


def test_gradient_check_full_stack():
    net = small_net(n_hidden=3, dropout=0.5)
    x = np.random.default_rng(2).normal(size=(8, 5))
    y = np.random.default_rng(3).integers(0, 4, size=8)
    assert gradient_check(net, x, y, rng_seed=5) < 1e-4


@pytest.mark.parametrize(
    "n_hidden, dropout, leak",
    [(0, 0.0, 0.01), (1, 0.0, 0.01), (1, 0.5, 0.01), (1, 0.0, 1.0), (2, 0.5, 0.3)],
)
def test_gradient_check_layer_variants(n_hidden, dropout, leak):
    net = small_net(n_hidden=n_hidden, dropout=dropout)
    net.leak = leak
    x = np.random.default_rng(4).normal(size=(6, 5))
    y = np.random.default_rng(5).integers(0, 4, size=6)
    assert gradient_check(net, x, y, rng_seed=8) < 1e-4


def test_forward_infer_deterministic_train_seeded():
    net = small_net()
    x = np.random.default_rng(0).normal(size=(4, 5))
    a, _ = forward(net, x, mode="infer")
    b, _ = forward(net, x, mode="infer")
    assert np.array_equal(a, b)
    t1, _ = forward(net, x, mode="train", rng=np.random.default_rng(7), update_running=False)
    t2, _ = forward(net, x, mode="train", rng=np.random.default_rng(7), update_running=False)
    assert np.array_equal(t1, t2)


def test_forward_shape_validation():
    net = small_net()
    with pytest.raises(ValueError, match="shape"):
        forward(net, np.zeros((3, 9)), mode="infer")
    with pytest.raises(ValueError, match="mode"):
        forward(net, np.zeros((3, 5)), mode="predict")


def test_adam_zero_gradient_is_noop():
    net = small_net()
    params = net.parameters()
    before = {k: v.copy() for k, v in params.items()}
    optimizer = Adam(params)
    optimizer.step({k: np.zeros_like(v) for k, v in params.items()})
    for k in params:
        assert np.array_equal(params[k], before[k])


def test_adam_descends_quadratic():
    w = np.array([5.0])
    optimizer = Adam({"w": w}, lr=0.1)
    for _ in range(300):
        optimizer.step({"w": 2 * w})  # d/dw of w^2
    assert abs(w[0]) < 0.05


def test_adam_rejects_non_finite_gradient():
    net = small_net()
    optimizer = Adam(net.parameters())
    grads = {k: np.zeros_like(v) for k, v in net.parameters().items()}
    grads["h1.weights"][0, 0] = np.nan
    with pytest.raises(TrainingError, match="h1.weights"):
        optimizer.step(grads)


def test_toy_convergence():
    # three Gaussian blobs, 200 Adam steps, expect near-perfect training accuracy
    rng = np.random.default_rng(0)
    centers = np.array([[3, 0, 0, 0, 0], [0, 3, 0, 0, 0], [0, 0, 3, 0, 0]], dtype=float)
    x = np.concatenate([rng.normal(c, 0.4, size=(60, 5)) for c in centers]).astype(np.float32)
    y = np.repeat(np.arange(3), 60)
    net = init_network(5, 3, hidden_width=16, n_hidden=3, seed=2)
    net.dropout_rate = 0.0
    optimizer = Adam(net.parameters(), lr=5e-3)
    drop_rng = np.random.default_rng(1)
    for _ in range(200):
        _, grads = loss_and_grad(net, x, y, rng=drop_rng, update_running=True)
        optimizer.step(grads)
    logits, _ = forward(net, x, mode="infer")
    assert (logits.argmax(axis=1) == y).mean() >= 0.99
