#include "modem.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace nbldpc {

namespace {

// Gray-coded PAM amplitude for a half-label g of w bits: level t with
// gray(t) = g, amplitude (L-1) - 2t so that g = 0 lands at +(L-1).
double pam_amplitude(unsigned g, unsigned w) {
    const unsigned levels = 1u << w;
    unsigned t = 0;
    for (unsigned x = 0; x < levels; ++x)
        if ((x ^ (x >> 1)) == g) {
            t = x;
            break;
        }
    return static_cast<double>(levels - 1) - 2.0 * static_cast<double>(t);
}

} // namespace

Constellation::Constellation(unsigned m) : m_(m) {
    const unsigned half = m / 2;
    const unsigned order = 1u << m;
    points_.resize(order);
    double energy = 0.0;
    for (unsigned label = 0; label < order; ++label) {
        const unsigned gi = label & ((1u << half) - 1); // low bits -> I
        const unsigned gq = label >> half;              // high bits -> Q
        points_[label] = {pam_amplitude(gi, half), pam_amplitude(gq, half)};
        energy += std::norm(points_[label]);
    }
    const double scale = 1.0 / std::sqrt(energy / order);
    for (auto& pt : points_) pt *= scale;
}

Constellation Constellation::qam(unsigned bits_per_symbol) {
    if (bits_per_symbol < 2 || bits_per_symbol > 8 || bits_per_symbol % 2 != 0)
        throw InvalidArgument("qam: bits per symbol must be one of {2, 4, 6, 8}, got " +
                              std::to_string(bits_per_symbol));
    return Constellation(bits_per_symbol);
}

std::vector<std::complex<double>> modulate(std::span<const std::uint8_t> bits, const Constellation& c) {
    const unsigned m = c.m();
    if (bits.size() % m != 0)
        throw InvalidArgument("modulate: bit count not divisible by m = " + std::to_string(m));
    const std::size_t n_sym = bits.size() / m;
    std::vector<std::complex<double>> out(n_sym);
    for (std::size_t k = 0; k < n_sym; ++k) {
        unsigned label = 0;
        for (unsigned t = 0; t < m; ++t)
            if (bits[k * m + t]) label |= 1u << t;
        out[k] = c.point(label);
    }
    return out;
}

std::vector<ChannelRealization> rayleigh_awgn(std::span<const std::complex<double>> x, double sigma2,
                                              Rng& rng) {
    if (sigma2 < 0.0) throw InvalidArgument("channel: sigma2 must be nonnegative");
    const double sigma = std::sqrt(sigma2);
    std::vector<ChannelRealization> out(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double h = rng.rayleigh_unit();
        const std::complex<double> z(sigma * rng.gaussian(), sigma * rng.gaussian());
        out[k] = {h * x[k] + z, h};
    }
    return out;
}

namespace {

// Squared-distance kernel weights for one received sample, max-normalized:
// w[label] = exp(-(d2 - d2_min) / (2 sigma2)). Safe at any SNR.
void point_weights(const ChannelRealization& r, double sigma2, const Constellation& c, double* w) {
    const unsigned order = c.order();
    double d2min = std::norm(r.rho - r.h * c.point(0));
    w[0] = d2min;
    for (unsigned a = 1; a < order; ++a) {
        w[a] = std::norm(r.rho - r.h * c.point(a));
        if (w[a] < d2min) d2min = w[a];
    }
    if (sigma2 <= 0.0) {
        for (unsigned a = 0; a < order; ++a) w[a] = w[a] == d2min ? 1.0 : 0.0;
        return;
    }
    const double inv = 1.0 / (2.0 * sigma2);
    for (unsigned a = 0; a < order; ++a) w[a] = std::exp(-(w[a] - d2min) * inv);
}

void sum_normalize(double* v, unsigned q) {
    double s = 0.0;
    for (unsigned a = 0; a < q; ++a) s += v[a];
    const double inv = 1.0 / s;
    for (unsigned a = 0; a < q; ++a) v[a] *= inv;
}

} // namespace

LikelihoodBlock symbol_likelihoods(std::span<const ChannelRealization> recv, double sigma2,
                                   const Constellation& c, const Field& field) {
    if (c.m() != field.p())
        throw InvalidArgument("likelihood: direct path needs constellation order = field order");
    const std::uint32_t q = field.q();
    LikelihoodBlock block;
    block.n_vectors = static_cast<std::uint32_t>(recv.size());
    block.q = q;
    block.data.resize(static_cast<std::size_t>(block.n_vectors) * q);
    for (std::uint32_t i = 0; i < block.n_vectors; ++i) {
        double* g = block.vec(i).data();
        point_weights(recv[i], sigma2, c, g); // symbol value == point label
        sum_normalize(g, q);
    }
    return block;
}

std::vector<BitProb> bitwise_marginalize(std::span<const ChannelRealization> recv, double sigma2,
                                         const Constellation& c) {
    const unsigned m = c.m();
    const unsigned order = c.order();
    std::vector<double> w(order);
    std::vector<BitProb> out(recv.size() * m);
    for (std::size_t k = 0; k < recv.size(); ++k) {
        point_weights(recv[k], sigma2, c, w.data());
        for (unsigned t = 0; t < m; ++t) {
            double s0 = 0.0, s1 = 0.0;
            for (unsigned label = 0; label < order; ++label)
                ((label >> t) & 1u ? s1 : s0) += w[label];
            const double inv = 1.0 / (s0 + s1);
            out[k * m + t] = {s0 * inv, s1 * inv};
        }
    }
    return out;
}

LikelihoodBlock regroup_bits_to_symbols(std::span<const BitProb> bit_probs, const InterleaverPattern& pat,
                                        const Field& field) {
    if (bit_probs.size() != pat.n())
        throw InvalidArgument("regroup: expected " + std::to_string(pat.n()) + " bit probabilities");
    if (pat.p() != field.p()) throw InvalidArgument("regroup: pattern/field bit width mismatch");
    const std::uint32_t q = field.q();
    const std::uint32_t p = field.p();
    const std::uint32_t n_sym = pat.n_symbols();
    const auto perm = pat.perm();

    LikelihoodBlock block;
    block.n_vectors = n_sym;
    block.q = q;
    block.data.resize(static_cast<std::size_t>(n_sym) * q);
    for (std::uint32_t i = 0; i < n_sym; ++i) {
        double* g = block.vec(i).data();
        for (std::uint32_t a = 0; a < q; ++a) g[a] = 1.0;
        for (std::uint32_t t = 0; t < p; ++t) {
            const BitProb bp = bit_probs[perm[i * p + t]];
            for (std::uint32_t a = 0; a < q; ++a) g[a] *= (a >> t) & 1u ? bp.p1 : bp.p0;
        }
        double s = 0.0;
        for (std::uint32_t a = 0; a < q; ++a) s += g[a];
        if (s <= 0.0) {
            for (std::uint32_t a = 0; a < q; ++a) g[a] = 1.0 / q;
        } else {
            const double inv = 1.0 / s;
            for (std::uint32_t a = 0; a < q; ++a) g[a] *= inv;
        }
    }
    return block;
}

double ebn0_db_to_sigma2(double ebn0_db, double rate, unsigned m) {
    if (rate <= 0.0 || m == 0) throw InvalidArgument("snr: rate and m must be positive");
    return 1.0 / (2.0 * rate * m * std::pow(10.0, ebn0_db / 10.0));
}

double esn0_offset_db(double rate, unsigned m) { return 10.0 * std::log10(rate * m); }

} // namespace nbldpc
