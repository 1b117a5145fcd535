#include "decoder.hpp"

#include <algorithm>
#include <string>

#include "errors.hpp"

namespace nbldpc {

namespace ops {

bool normalize(std::span<double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    if (!(s > 0.0)) {
        const double u = 1.0 / static_cast<double>(v.size());
        for (double& x : v) x = u;
        return false;
    }
    const double inv = 1.0 / s;
    for (double& x : v) x *= inv;
    return true;
}

void wht_inplace(std::span<double> v) {
    const std::size_t q = v.size();
    for (std::size_t len = 1; len < q; len <<= 1) {
        for (std::size_t i = 0; i < q; i += len << 1) {
            for (std::size_t j = i; j < i + len; ++j) {
                const double a = v[j];
                const double b = v[j + len];
                v[j] = a + b;
                v[j + len] = a - b;
            }
        }
    }
}

void variable_update(std::span<const double> gamma, std::span<const std::span<const double>> incoming,
                     std::span<double> out) {
    std::copy(gamma.begin(), gamma.end(), out.begin());
    for (const auto& msg : incoming)
        for (std::size_t a = 0; a < out.size(); ++a) out[a] *= msg[a];
    normalize(out);
}

void permute_forward(const Field& f, Symbol h, std::span<const double> in, std::span<double> out) {
    if (h == 0) throw InvalidArgument("permute: zero edge coefficient");
    const Symbol* row = f.mul_row(h);
    for (std::size_t a = 0; a < in.size(); ++a) out[row[a]] = in[a];
}

void permute_backward(const Field& f, Symbol h, std::span<const double> in, std::span<double> out) {
    if (h == 0) throw InvalidArgument("permute: zero edge coefficient");
    const Symbol* row = f.mul_row(h);
    for (std::size_t a = 0; a < in.size(); ++a) out[a] = in[row[a]];
}

void check_update(const Field& f, std::span<const std::span<const double>> incoming_permuted,
                  Symbol h_target, std::span<double> out) {
    const std::size_t q = f.q();
    std::vector<double> acc(q, 1.0), t(q);
    for (const auto& msg : incoming_permuted) {
        std::copy(msg.begin(), msg.end(), t.begin());
        wht_inplace(t);
        for (std::size_t a = 0; a < q; ++a) acc[a] *= t[a];
    }
    wht_inplace(acc);
    const double scale = 1.0 / static_cast<double>(q);
    for (double& x : acc) x = std::max(0.0, x * scale);
    permute_backward(f, h_target, acc, out);
    normalize(out);
}

} // namespace ops

Decoder::Decoder(const TannerGraph& graph)
    : graph_(&graph), q_(graph.field().q()), n_(graph.n()) {
    const std::size_t e = graph.n_edges();
    alpha_.resize(e * q_);
    beta_.resize(e * q_);
    post_.resize(static_cast<std::size_t>(n_) * q_);
    decision_.resize(n_);
    max_check_deg_ = 0;
    for (std::uint32_t j = 0; j < graph.m(); ++j)
        max_check_deg_ = std::max(max_check_deg_, graph.check_degree(j));
    // transforms of incoming messages plus prefix/suffix product rows
    scratch_.resize(static_cast<std::size_t>(max_check_deg_) * q_ * 3 + 2 * q_);
}

DecodeOutcome Decoder::decode(const LikelihoodBlock& gammas, std::uint32_t max_iter, bool early_stop) {
    if (max_iter < 1) throw InvalidArgument("decode: max_iter must be >= 1");
    if (gammas.n_vectors != n_ || gammas.q != q_)
        throw InvalidArgument("decode: likelihood block is " + std::to_string(gammas.n_vectors) + "x" +
                              std::to_string(gammas.q) + ", expected " + std::to_string(n_) + "x" +
                              std::to_string(q_));
    const TannerGraph& g = *graph_;
    const Field& f = g.field();

    const double uniform = 1.0 / q_;
    std::fill(beta_.begin(), beta_.end(), uniform);

    double* fwd = scratch_.data();                                              // deg x q
    double* pre = fwd + static_cast<std::size_t>(max_check_deg_) * q_;          // (deg+1) rows reused
    double* suf = pre + (static_cast<std::size_t>(max_check_deg_) + 1) * q_;    // deg rows + 1
    const double inv_q = 1.0 / static_cast<double>(q_);

    DecodeOutcome outcome;
    for (std::uint32_t iter = 1; iter <= max_iter; ++iter) {
        // symbol-node half-iteration
        for (std::uint32_t i = 0; i < n_; ++i) {
            const auto edges = g.symbol_edges(i);
            const double* gamma = gammas.vec(i).data();
            for (std::size_t t = 0; t < edges.size(); ++t) {
                double* out = edge_vec(alpha_, edges[t]);
                std::copy(gamma, gamma + q_, out);
                for (std::size_t s = 0; s < edges.size(); ++s) {
                    if (s == t) continue;
                    const double* b = edge_vec(beta_, edges[s]);
                    for (std::uint32_t a = 0; a < q_; ++a) out[a] *= b[a];
                }
                if (!ops::normalize({out, q_})) ++degenerate_;
            }
        }

        // check-node half-iteration: transform forward-permuted messages
        // once, combine all-but-one with prefix/suffix products.
        for (std::uint32_t j = 0; j < g.m(); ++j) {
            const auto edges = g.check_edges(j);
            const std::size_t deg = edges.size();
            for (std::size_t t = 0; t < deg; ++t) {
                const Edge& e = g.edges()[edges[t]];
                ops::permute_forward(f, e.coeff, {edge_vec(alpha_, edges[t]), q_}, {fwd + t * q_, q_});
                ops::wht_inplace({fwd + t * q_, q_});
            }
            for (std::uint32_t a = 0; a < q_; ++a) pre[a] = 1.0;
            for (std::size_t t = 0; t < deg; ++t) {
                const double* src = pre + t * q_;
                const double* m = fwd + t * q_;
                double* dst = pre + (t + 1) * q_;
                for (std::uint32_t a = 0; a < q_; ++a) dst[a] = src[a] * m[a];
            }
            for (std::uint32_t a = 0; a < q_; ++a) suf[deg * q_ + a] = 1.0;
            for (std::size_t t = deg; t-- > 0;) {
                const double* src = suf + (t + 1) * q_;
                const double* m = fwd + t * q_;
                double* dst = suf + t * q_;
                for (std::uint32_t a = 0; a < q_; ++a) dst[a] = src[a] * m[a];
            }
            for (std::size_t t = 0; t < deg; ++t) {
                double* out = edge_vec(beta_, edges[t]);
                double* tmp = fwd + t * q_; // incoming transform no longer needed
                const double* lo = pre + t * q_;
                const double* hi = suf + (t + 1) * q_;
                for (std::uint32_t a = 0; a < q_; ++a) tmp[a] = lo[a] * hi[a];
                ops::wht_inplace({tmp, q_});
                for (std::uint32_t a = 0; a < q_; ++a) tmp[a] = std::max(0.0, tmp[a] * inv_q);
                const Edge& e = g.edges()[edges[t]];
                ops::permute_backward(f, e.coeff, {tmp, q_}, {out, q_});
                if (!ops::normalize({out, q_})) ++degenerate_;
            }
        }

        // a-posteriori decision, ties to the lowest symbol value
        for (std::uint32_t i = 0; i < n_; ++i) {
            const auto edges = g.symbol_edges(i);
            double* post = post_.data() + static_cast<std::size_t>(i) * q_;
            const double* gamma = gammas.vec(i).data();
            std::copy(gamma, gamma + q_, post);
            for (std::uint32_t e : edges) {
                const double* b = edge_vec(beta_, e);
                for (std::uint32_t a = 0; a < q_; ++a) post[a] *= b[a];
            }
            ops::normalize({post, q_});
            std::uint32_t best = 0;
            for (std::uint32_t a = 1; a < q_; ++a)
                if (post[a] > post[best]) best = a;
            decision_[i] = static_cast<Symbol>(best);
        }

        if (early_stop && g.syndrome_is_zero(decision_)) {
            outcome.decision = decision_;
            outcome.status = DecodeStatus::Converged;
            outcome.iterations_used = iter;
            return outcome;
        }
    }

    outcome.decision = decision_;
    outcome.status = g.syndrome_is_zero(decision_) ? DecodeStatus::Converged : DecodeStatus::MaxIterations;
    outcome.iterations_used = max_iter;
    return outcome;
}

} // namespace nbldpc
