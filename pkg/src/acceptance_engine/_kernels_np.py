"""Pure-numpy batch kernels; fallback when the compiled extension is absent.

Both backends expose the same two functions with identical signatures and
semantics. The forward accumulation loops over the (tiny) input and hidden
dimensions in ascending order, vectorized over samples, so each row's
result is independent of the batch size; a BLAS matmul would not give that
guarantee, and scenario operations rely on batch-vs-single bit equality.
"""
import numpy as np

BACKEND = "numpy"


def _hidden(w_in, b_hidden, x):
    n = x.shape[0]
    pre = np.zeros((n, b_hidden.shape[0]))
    for i in range(x.shape[1]):
        pre += x[:, i : i + 1] * w_in[i]
    pre += b_hidden
    return pre, np.maximum(pre, 0.0)


def _output(w_out, b_out, hidden_post):
    y = np.zeros(hidden_post.shape[0])
    for j in range(w_out.shape[0]):
        y += w_out[j] * hidden_post[:, j]
    y += b_out
    return y


def batch_forward(w_in, b_hidden, w_out, b_out, x, sigmoid=False):
    """Forward pass over a batch.

    x has shape (n, inputs); returns (hidden_pre, hidden_post, y) with
    shapes (n, hidden), (n, hidden), (n,).
    """
    hidden_pre, hidden_post = _hidden(w_in, b_hidden, x)
    y = _output(w_out, b_out, hidden_post)
    if sigmoid:
        y = 1.0 / (1.0 + np.exp(-y))
    return hidden_pre, hidden_post, y


def batch_backward(w_in, b_hidden, w_out, b_out, x, targets, sigmoid=False):
    """Gradients of batch-mean squared error w.r.t. every parameter.

    Returns (g_w_in, g_b_hidden, g_w_out, g_b_out, predictions). The ReLU
    derivative at exactly 0 is taken as 0.
    """
    n = x.shape[0]
    hidden_pre, hidden_post = _hidden(w_in, b_hidden, x)
    y = _output(w_out, b_out, hidden_post)
    if sigmoid:
        y = 1.0 / (1.0 + np.exp(-y))
    delta = 2.0 * (y - targets) / n
    if sigmoid:
        delta = delta * y * (1.0 - y)
    g_w_out = hidden_post.T @ delta
    g_b_out = float(delta.sum())
    d_hidden = (delta[:, None] * w_out[None, :]) * (hidden_pre > 0.0)
    g_w_in = x.T @ d_hidden
    g_b_hidden = d_hidden.sum(axis=0)
    return g_w_in, g_b_hidden, g_w_out, g_b_out, y
