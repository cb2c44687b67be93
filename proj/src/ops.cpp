// Copyright 2026 The lietext Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lietext/ops.hpp"

#include <sstream>

#include "lietext/errors.hpp"

namespace lietext {
namespace {

template <typename Scalar>
using NodePtr = std::shared_ptr<detail::Node<Scalar>>;

template <typename Scalar>
void require_rank_at_most_2(const Tensor<Scalar>& t, const char* op) {
  if (t.rank() > 2) {
    throw DimensionError(std::string(op) + ": expected rank <= 2, got " + shape_string(t.shape()));
  }
}

std::string two_shapes(const char* op, const Shape& a, const Shape& b) {
  std::ostringstream os;
  os << op << ": incompatible shapes " << shape_string(a) << " and " << shape_string(b);
  return os.str();
}

}  // namespace

template <typename Scalar>
Tensor<Scalar> matmul(const Tensor<Scalar>& a, const Tensor<Scalar>& b) {
  require_rank_at_most_2(a, "matmul");
  require_rank_at_most_2(b, "matmul");
  if (a.cols() != b.rows()) throw DimensionError(two_shapes("matmul", a.shape(), b.shape()));
  Matrix<Scalar> out = a.value() * b.value();
  Shape shape{out.rows(), out.cols()};
  NodePtr<Scalar> an = a.node(), bn = b.node();
  return make_op<Scalar>("matmul", std::move(out), std::move(shape), {a, b},
                         [an, bn](const Matrix<Scalar>& g) {
                           if (an->requires_grad) {
                             an->grad_buffer().noalias() += g * bn->value.transpose();
                           }
                           if (bn->requires_grad) {
                             bn->grad_buffer().noalias() += an->value.transpose() * g;
                           }
                         });
}

template <typename Scalar>
Tensor<Scalar> add(const Tensor<Scalar>& a, const Tensor<Scalar>& b) {
  NodePtr<Scalar> an = a.node(), bn = b.node();
  if (a.shape() == b.shape()) {
    return make_op<Scalar>("add", a.value() + b.value(), a.shape(), {a, b},
                           [an, bn](const Matrix<Scalar>& g) {
                             if (an->requires_grad) an->grad_buffer() += g;
                             if (bn->requires_grad) bn->grad_buffer() += g;
                           });
  }
  if (b.size() == 1 || a.size() == 1) {
    const bool a_scalar = a.size() == 1 && b.size() != 1;
    const Tensor<Scalar>& big = a_scalar ? b : a;
    const Tensor<Scalar>& small = a_scalar ? a : b;
    NodePtr<Scalar> big_n = big.node(), small_n = small.node();
    Matrix<Scalar> out = big.value().array() + small.value()(0, 0);
    return make_op<Scalar>("add", std::move(out), big.shape(), {a, b},
                           [big_n, small_n](const Matrix<Scalar>& g) {
                             if (big_n->requires_grad) big_n->grad_buffer() += g;
                             if (small_n->requires_grad) small_n->grad_buffer()(0, 0) += g.sum();
                           });
  }
  throw DimensionError(two_shapes("add", a.shape(), b.shape()));
}

template <typename Scalar>
Tensor<Scalar> mul(const Tensor<Scalar>& a, const Tensor<Scalar>& b) {
  NodePtr<Scalar> an = a.node(), bn = b.node();
  if (a.shape() == b.shape()) {
    Matrix<Scalar> out = a.value().cwiseProduct(b.value());
    return make_op<Scalar>("mul", std::move(out), a.shape(), {a, b},
                           [an, bn](const Matrix<Scalar>& g) {
                             if (an->requires_grad) an->grad_buffer() += g.cwiseProduct(bn->value);
                             if (bn->requires_grad) bn->grad_buffer() += g.cwiseProduct(an->value);
                           });
  }
  if (b.size() == 1 || a.size() == 1) {
    const bool a_scalar = a.size() == 1 && b.size() != 1;
    const Tensor<Scalar>& big = a_scalar ? b : a;
    const Tensor<Scalar>& small = a_scalar ? a : b;
    NodePtr<Scalar> big_n = big.node(), small_n = small.node();
    Matrix<Scalar> out = big.value() * small.value()(0, 0);
    return make_op<Scalar>("mul", std::move(out), big.shape(), {a, b},
                           [big_n, small_n](const Matrix<Scalar>& g) {
                             if (big_n->requires_grad) {
                               big_n->grad_buffer() += g * small_n->value(0, 0);
                             }
                             if (small_n->requires_grad) {
                               small_n->grad_buffer()(0, 0) += g.cwiseProduct(big_n->value).sum();
                             }
                           });
  }
  throw DimensionError(two_shapes("mul", a.shape(), b.shape()));
}

template <typename Scalar>
Tensor<Scalar> scale(const Tensor<Scalar>& a, Scalar factor) {
  NodePtr<Scalar> an = a.node();
  return make_op<Scalar>("scale", a.value() * factor, a.shape(), {a},
                         [an, factor](const Matrix<Scalar>& g) { an->grad_buffer() += g * factor; });
}

template <typename Scalar>
Tensor<Scalar> relu(const Tensor<Scalar>& a) {
  NodePtr<Scalar> an = a.node();
  Matrix<Scalar> out = a.value().cwiseMax(Scalar(0));
  return make_op<Scalar>("relu", std::move(out), a.shape(), {a}, [an](const Matrix<Scalar>& g) {
    an->grad_buffer() += (an->value.array() > Scalar(0)).select(g.array(), Scalar(0)).matrix();
  });
}

template <typename Scalar>
Tensor<Scalar> add_bias(const Tensor<Scalar>& x, const Tensor<Scalar>& bias) {
  require_rank_at_most_2(x, "add_bias");
  if (bias.rows() != 1 || bias.cols() != x.cols()) {
    throw DimensionError(two_shapes("add_bias", x.shape(), bias.shape()));
  }
  Matrix<Scalar> out = x.value().rowwise() + bias.value().row(0);
  NodePtr<Scalar> xn = x.node(), bn = bias.node();
  return make_op<Scalar>("add_bias", std::move(out), x.shape(), {x, bias},
                         [xn, bn](const Matrix<Scalar>& g) {
                           if (xn->requires_grad) xn->grad_buffer() += g;
                           if (bn->requires_grad) bn->grad_buffer() += g.colwise().sum();
                         });
}

template <typename Scalar>
Tensor<Scalar> sum(const Tensor<Scalar>& a) {
  NodePtr<Scalar> an = a.node();
  Matrix<Scalar> out = Matrix<Scalar>::Constant(1, 1, a.value().sum());
  return make_op<Scalar>("sum", std::move(out), Shape{}, {a}, [an](const Matrix<Scalar>& g) {
    an->grad_buffer().array() += g(0, 0);
  });
}

template <typename Scalar>
Tensor<Scalar> reshape(const Tensor<Scalar>& a, Shape shape) {
  if (shape_size(shape) != a.size()) {
    throw DimensionError(two_shapes("reshape", a.shape(), shape));
  }
  NodePtr<Scalar> an = a.node();
  return make_op<Scalar>("reshape", a.value(), std::move(shape), {a},
                         [an](const Matrix<Scalar>& g) {
                           auto& buf = an->grad_buffer();
                           Eigen::Map<Matrix<Scalar>>(buf.data(), buf.rows(), buf.cols()) +=
                               Eigen::Map<const Matrix<Scalar>>(g.data(), buf.rows(), buf.cols());
                         });
}

template <typename Scalar>
Tensor<Scalar> gather_rows(const Tensor<Scalar>& table, std::span<const std::int32_t> rows,
                           std::int32_t frozen_row) {
  if (table.rank() < 2) throw DimensionError("gather_rows: table must have rank >= 2");
  const Index vocab = table.rows();
  Matrix<Scalar> out(static_cast<Index>(rows.size()), table.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] < 0 || rows[r] >= vocab) {
      std::ostringstream os;
      os << "gather_rows: index " << rows[r] << " out of range [0, " << vocab << ")";
      throw PreconditionError(os.str());
    }
    out.row(static_cast<Index>(r)) = table.value().row(rows[r]);
  }
  NodePtr<Scalar> tn = table.node();
  std::vector<std::int32_t> idx(rows.begin(), rows.end());
  Shape shape{out.rows(), out.cols()};
  return make_op<Scalar>("gather_rows", std::move(out), std::move(shape), {table},
                         [tn, idx = std::move(idx), frozen_row](const Matrix<Scalar>& g) {
                           auto& buf = tn->grad_buffer();
                           for (std::size_t r = 0; r < idx.size(); ++r) {
                             if (idx[r] == frozen_row) continue;
                             buf.row(idx[r]) += g.row(static_cast<Index>(r));
                           }
                         });
}

template <typename Scalar>
Tensor<Scalar> pad_rows(const Tensor<Scalar>& x, Index before, Index after) {
  if (x.rank() != 2) throw DimensionError("pad_rows: expected rank 2");
  if (before < 0 || after < 0) throw PreconditionError("pad_rows: negative padding");
  Matrix<Scalar> out = Matrix<Scalar>::Zero(x.rows() + before + after, x.cols());
  out.middleRows(before, x.rows()) = x.value();
  NodePtr<Scalar> xn = x.node();
  Shape shape{out.rows(), out.cols()};
  return make_op<Scalar>("pad_rows", std::move(out), std::move(shape), {x},
                         [xn, before](const Matrix<Scalar>& g) {
                           xn->grad_buffer() += g.middleRows(before, xn->value.rows());
                         });
}

template <typename Scalar>
Tensor<Scalar> concat_cols(std::span<const Tensor<Scalar>> parts) {
  if (parts.empty()) throw PreconditionError("concat_cols: no inputs");
  const Index rows = parts[0].rows();
  Index cols = 0;
  bool all_rank1 = true;
  for (const auto& p : parts) {
    require_rank_at_most_2(p, "concat_cols");
    if (p.rows() != rows) throw DimensionError(two_shapes("concat_cols", parts[0].shape(), p.shape()));
    cols += p.cols();
    all_rank1 = all_rank1 && p.rank() == 1;
  }
  Matrix<Scalar> out(rows, cols);
  std::vector<NodePtr<Scalar>> nodes;
  Index at = 0;
  for (const auto& p : parts) {
    out.middleCols(at, p.cols()) = p.value();
    at += p.cols();
    nodes.push_back(p.node());
  }
  Shape shape = all_rank1 ? Shape{cols} : Shape{rows, cols};
  return make_op<Scalar>("concat_cols", std::move(out), std::move(shape),
                         std::vector<Tensor<Scalar>>(parts.begin(), parts.end()),
                         [nodes = std::move(nodes)](const Matrix<Scalar>& g) {
                           Index at = 0;
                           for (const auto& n : nodes) {
                             const Index c = n->value.cols();
                             if (n->requires_grad) n->grad_buffer() += g.middleCols(at, c);
                             at += c;
                           }
                         });
}

template <typename Scalar>
Tensor<Scalar> concat_rows(std::span<const Tensor<Scalar>> parts) {
  if (parts.empty()) throw PreconditionError("concat_rows: no inputs");
  const Index cols = parts[0].cols();
  Index rows = 0;
  for (const auto& p : parts) {
    require_rank_at_most_2(p, "concat_rows");
    if (p.cols() != cols) throw DimensionError(two_shapes("concat_rows", parts[0].shape(), p.shape()));
    rows += p.rows();
  }
  Matrix<Scalar> out(rows, cols);
  std::vector<NodePtr<Scalar>> nodes;
  Index at = 0;
  for (const auto& p : parts) {
    out.middleRows(at, p.rows()) = p.value();
    at += p.rows();
    nodes.push_back(p.node());
  }
  Shape shape{rows, cols};
  return make_op<Scalar>("concat_rows", std::move(out), std::move(shape),
                         std::vector<Tensor<Scalar>>(parts.begin(), parts.end()),
                         [nodes = std::move(nodes)](const Matrix<Scalar>& g) {
                           Index at = 0;
                           for (const auto& n : nodes) {
                             const Index r = n->value.rows();
                             if (n->requires_grad) n->grad_buffer() += g.middleRows(at, r);
                             at += r;
                           }
                         });
}

template <typename Scalar>
Tensor<Scalar> conv1d_valid(const Tensor<Scalar>& input, const Tensor<Scalar>& kernel,
                            const Tensor<Scalar>& bias) {
  if (input.rank() != 2) throw DimensionError("conv1d_valid: input must be [n x d]");
  if (kernel.rank() != 3) throw DimensionError("conv1d_valid: kernel must be [l x d x s]");
  const Index n = input.rows(), d = input.cols();
  const Index l = kernel.shape()[0], s = kernel.shape()[2];
  if (kernel.shape()[1] != d) throw DimensionError(two_shapes("conv1d_valid", input.shape(), kernel.shape()));
  if (bias.size() != s || bias.rows() != 1) {
    throw DimensionError(two_shapes("conv1d_valid", kernel.shape(), bias.shape()));
  }
  if (n < l) {
    std::ostringstream os;
    os << "conv1d_valid: sequence length " << n << " shorter than kernel width " << l;
    throw PreconditionError(os.str());
  }
  const Index m = n - l + 1;
  const auto& x = input.value();
  Eigen::Map<const Matrix<Scalar>> k(kernel.value().data(), l * d, s);
  Matrix<Scalar> out = Matrix<Scalar>::Zero(m, s);
  for (Index i = 0; i < m; ++i) {
    for (Index t = 0; t < l; ++t) {
      for (Index c = 0; c < d; ++c) out.row(i) += x(i + t, c) * k.row(t * d + c);
    }
    out.row(i) += bias.value().row(0);
  }
  NodePtr<Scalar> xn = input.node(), kn = kernel.node(), bn = bias.node();
  Shape shape{m, s};
  return make_op<Scalar>(
      "conv1d_valid", std::move(out), std::move(shape), {input, kernel, bias},
      [xn, kn, bn, l, d, s, m](const Matrix<Scalar>& g) {
        Eigen::Map<const Matrix<Scalar>> k(kn->value.data(), l * d, s);
        if (kn->requires_grad) {
          auto& buf = kn->grad_buffer();
          Eigen::Map<Matrix<Scalar>> dk(buf.data(), l * d, s);
          for (Index t = 0; t < l; ++t) {
            dk.middleRows(t * d, d).noalias() += xn->value.middleRows(t, m).transpose() * g;
          }
        }
        if (xn->requires_grad) {
          auto& dx = xn->grad_buffer();
          for (Index t = 0; t < l; ++t) {
            dx.middleRows(t, m).noalias() += g * k.middleRows(t * d, d).transpose();
          }
        }
        if (bn->requires_grad) bn->grad_buffer() += g.colwise().sum();
      });
}

template <typename Scalar>
Tensor<Scalar> max_over_time(const Tensor<Scalar>& x) {
  require_rank_at_most_2(x, "max_over_time");
  const bool vector = x.rank() <= 1;
  const auto& v = x.value();
  if (v.size() == 0) throw PreconditionError("max_over_time: empty input");
  // A rank-1 input is one column of length n.
  const Index len = vector ? v.size() : v.rows();
  const Index channels = vector ? 1 : v.cols();
  auto at = [&](Index t, Index c) { return vector ? v(0, t) : v(t, c); };
  Matrix<Scalar> out(1, channels);
  std::vector<Index> arg(static_cast<std::size_t>(channels));
  for (Index c = 0; c < channels; ++c) {
    Index best = 0;
    for (Index t = 1; t < len; ++t) {
      if (at(t, c) > at(best, c)) best = t;
    }
    arg[static_cast<std::size_t>(c)] = best;
    out(0, c) = at(best, c);
  }
  NodePtr<Scalar> xn = x.node();
  Shape shape = vector ? Shape{} : Shape{channels};
  return make_op<Scalar>("max_over_time", std::move(out), std::move(shape), {x},
                         [xn, arg = std::move(arg), vector](const Matrix<Scalar>& g) {
                           auto& buf = xn->grad_buffer();
                           for (std::size_t c = 0; c < arg.size(); ++c) {
                             const Index ci = static_cast<Index>(c);
                             if (vector) {
                               buf(0, arg[c]) += g(0, 0);
                             } else {
                               buf(arg[c], ci) += g(0, ci);
                             }
                           }
                         });
}

template <typename Scalar>
Tensor<Scalar> max_pool_rows(const Tensor<Scalar>& x, Index size, Index stride) {
  if (x.rank() != 2) throw DimensionError("max_pool_rows: expected rank 2");
  if (size < 1 || stride < 1) throw PreconditionError("max_pool_rows: size and stride must be >= 1");
  const Index n = x.rows(), ch = x.cols();
  if (n == 0) throw PreconditionError("max_pool_rows: empty input");
  const Index pad = (size - 1) / 2;
  const Index out_rows = std::max<Index>(1, (n + 2 * pad - size) / stride + 1);
  const auto& v = x.value();
  Matrix<Scalar> out(out_rows, ch);
  std::vector<Index> arg(static_cast<std::size_t>(out_rows * ch));
  for (Index r = 0; r < out_rows; ++r) {
    const Index lo = std::max<Index>(0, r * stride - pad);
    const Index hi = std::min<Index>(n, r * stride - pad + size);
    for (Index c = 0; c < ch; ++c) {
      Index best = lo;
      for (Index t = lo + 1; t < hi; ++t) {
        if (v(t, c) > v(best, c)) best = t;
      }
      out(r, c) = v(best, c);
      arg[static_cast<std::size_t>(r * ch + c)] = best;
    }
  }
  NodePtr<Scalar> xn = x.node();
  Shape shape{out_rows, ch};
  return make_op<Scalar>("max_pool_rows", std::move(out), std::move(shape), {x},
                         [xn, arg = std::move(arg), out_rows, ch](const Matrix<Scalar>& g) {
                           auto& buf = xn->grad_buffer();
                           for (Index r = 0; r < out_rows; ++r) {
                             for (Index c = 0; c < ch; ++c) {
                               buf(arg[static_cast<std::size_t>(r * ch + c)], c) += g(r, c);
                             }
                           }
                         });
}

template <typename Scalar>
Tensor<Scalar> softmax_cross_entropy(const Tensor<Scalar>& logits,
                                     std::span<const std::int32_t> labels) {
  require_rank_at_most_2(logits, "softmax_cross_entropy");
  const Index batch = logits.rows(), classes = logits.cols();
  if (static_cast<Index>(labels.size()) != batch) {
    throw DimensionError("softmax_cross_entropy: label count does not match batch size");
  }
  if (batch == 0) throw PreconditionError("softmax_cross_entropy: empty batch");
  Matrix<Scalar> probs(batch, classes);
  Scalar total = 0;
  for (Index b = 0; b < batch; ++b) {
    const std::int32_t y = labels[static_cast<std::size_t>(b)];
    if (y < 0 || y >= classes) {
      std::ostringstream os;
      os << "softmax_cross_entropy: label " << y << " outside [0, " << classes << ")";
      throw PreconditionError(os.str());
    }
    const auto row = logits.value().row(b);
    const Scalar shift = row.maxCoeff();
    auto e = (row.array() - shift).exp();
    const Scalar z = e.sum();
    probs.row(b) = e / z;
    total += std::log(z) - (row(y) - shift);
  }
  Matrix<Scalar> out = Matrix<Scalar>::Constant(1, 1, total / static_cast<Scalar>(batch));
  NodePtr<Scalar> ln = logits.node();
  std::vector<std::int32_t> ys(labels.begin(), labels.end());
  return make_op<Scalar>("softmax_cross_entropy", std::move(out), Shape{}, {logits},
                         [ln, probs = std::move(probs), ys = std::move(ys)](const Matrix<Scalar>& g) {
                           Matrix<Scalar> d = probs;
                           for (std::size_t b = 0; b < ys.size(); ++b) {
                             d(static_cast<Index>(b), ys[b]) -= Scalar(1);
                           }
                           ln->grad_buffer() += d * (g(0, 0) / static_cast<Scalar>(ys.size()));
                         });
}

template <typename Scalar>
Tensor<Scalar> dropout(const Tensor<Scalar>& x, double rate, bool training, Rng& rng) {
  if (!(rate >= 0.0 && rate < 1.0)) throw PreconditionError("dropout: rate must be in [0, 1)");
  if (!training || rate == 0.0) return x;
  const Scalar keep_scale = static_cast<Scalar>(1.0 / (1.0 - rate));
  Matrix<Scalar> mask(x.rows(), x.cols());
  for (Index i = 0; i < mask.size(); ++i) {
    mask.data()[i] = rng.uniform() < rate ? Scalar(0) : keep_scale;
  }
  Matrix<Scalar> out = x.value().cwiseProduct(mask);
  NodePtr<Scalar> xn = x.node();
  return make_op<Scalar>("dropout", std::move(out), x.shape(), {x},
                         [xn, mask = std::move(mask)](const Matrix<Scalar>& g) {
                           xn->grad_buffer() += g.cwiseProduct(mask);
                         });
}

#define LIETEXT_INSTANTIATE_OPS(S)                                                               \
  template Tensor<S> matmul(const Tensor<S>&, const Tensor<S>&);                                 \
  template Tensor<S> add(const Tensor<S>&, const Tensor<S>&);                                    \
  template Tensor<S> mul(const Tensor<S>&, const Tensor<S>&);                                    \
  template Tensor<S> scale(const Tensor<S>&, S);                                                 \
  template Tensor<S> relu(const Tensor<S>&);                                                     \
  template Tensor<S> add_bias(const Tensor<S>&, const Tensor<S>&);                               \
  template Tensor<S> sum(const Tensor<S>&);                                                      \
  template Tensor<S> reshape(const Tensor<S>&, Shape);                                           \
  template Tensor<S> gather_rows(const Tensor<S>&, std::span<const std::int32_t>, std::int32_t); \
  template Tensor<S> pad_rows(const Tensor<S>&, Index, Index);                                   \
  template Tensor<S> concat_cols(std::span<const Tensor<S>>);                                    \
  template Tensor<S> concat_rows(std::span<const Tensor<S>>);                                    \
  template Tensor<S> conv1d_valid(const Tensor<S>&, const Tensor<S>&, const Tensor<S>&);         \
  template Tensor<S> max_over_time(const Tensor<S>&);                                            \
  template Tensor<S> max_pool_rows(const Tensor<S>&, Index, Index);                              \
  template Tensor<S> softmax_cross_entropy(const Tensor<S>&, std::span<const std::int32_t>);     \
  template Tensor<S> dropout(const Tensor<S>&, double, bool, Rng&);

LIETEXT_INSTANTIATE_OPS(float)
LIETEXT_INSTANTIATE_OPS(double)

}  // namespace lietext
