#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "gf.hpp"
#include "interleaver.hpp"
#include "rng.hpp"

namespace nbldpc {

// Square M-QAM with Gray labeling per axis, unit average energy. The m-bit
// label splits LSB-first into an I half and a Q half; on each axis the
// all-zero half-label sits at the most positive amplitude.
class Constellation {
public:
    static Constellation qam(unsigned bits_per_symbol); // m in {2, 4, 6, 8}

    unsigned m() const { return m_; }
    unsigned order() const { return 1u << m_; }
    std::complex<double> point(unsigned label) const { return points_[label]; }
    std::span<const std::complex<double>> points() const { return points_; }

private:
    explicit Constellation(unsigned m);
    unsigned m_;
    std::vector<std::complex<double>> points_;
};

struct ChannelRealization {
    std::complex<double> rho; // received sample
    double h;                 // Rayleigh amplitude, known at the receiver
};

// Consecutive m-bit groups mapped through the Gray labeling, LSB-first.
std::vector<std::complex<double>> modulate(std::span<const std::uint8_t> bits, const Constellation& c);

// rho = h x + z with h Rayleigh (E[h^2] = 1) and z complex Gaussian with
// variance sigma2 per dimension.
std::vector<ChannelRealization> rayleigh_awgn(std::span<const std::complex<double>> x, double sigma2,
                                              Rng& rng);

// N probability vectors over GF(q); each sums to 1.
struct LikelihoodBlock {
    std::uint32_t n_vectors = 0;
    std::uint32_t q = 0;
    std::vector<double> data; // n_vectors x q, row-major

    std::span<double> vec(std::uint32_t i) { return {data.data() + static_cast<std::size_t>(i) * q, q}; }
    std::span<const double> vec(std::uint32_t i) const {
        return {data.data() + static_cast<std::size_t>(i) * q, q};
    }
};

struct BitProb {
    double p0, p1;
};

// Direct path (no interleaver, m = p): gamma_i(a) from the Gaussian kernel
// at the point labeled by a's binary image. Max-normalized before the sum
// normalization, so deep-SNR kernels cannot underflow to all-zero.
LikelihoodBlock symbol_likelihoods(std::span<const ChannelRealization> recv, double sigma2,
                                   const Constellation& c, const Field& field);

// Per-bit posteriors of every modulation symbol, in modulation bit order.
std::vector<BitProb> bitwise_marginalize(std::span<const ChannelRealization> recv, double sigma2,
                                         const Constellation& c);

// De-interleave the bit posteriors and multiply them into q-ary vectors.
LikelihoodBlock regroup_bits_to_symbols(std::span<const BitProb> bit_probs, const InterleaverPattern& pat,
                                        const Field& field);

// sigma2 = 1 / (2 R m 10^(EbN0/10)) for unit-energy constellations and
// unit-power fading.
double ebn0_db_to_sigma2(double ebn0_db, double rate, unsigned m);
double esn0_offset_db(double rate, unsigned m); // EsN0 = EbN0 + offset

} // namespace nbldpc
