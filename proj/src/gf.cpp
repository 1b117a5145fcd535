#include "gf.hpp"

#include <string>

#include "errors.hpp"

namespace nbldpc {

unsigned Field::canonical_primitive_poly(unsigned p) {
    // Minimal-weight primitive polynomials, one per extension degree.
    static const unsigned table[9] = {
        0,
        0x3,   // x + 1
        0x7,   // x^2 + x + 1
        0xb,   // x^3 + x + 1
        0x13,  // x^4 + x + 1
        0x25,  // x^5 + x^2 + 1
        0x43,  // x^6 + x + 1
        0x89,  // x^7 + x^3 + 1
        0x11d, // x^8 + x^4 + x^3 + x^2 + 1
    };
    if (p < 1 || p > 8) throw InvalidArgument("field: p must be in [1, 8], got " + std::to_string(p));
    return table[p];
}

Field::Field(unsigned bits_per_symbol) : Field(bits_per_symbol, canonical_primitive_poly(bits_per_symbol)) {}

Field::Field(unsigned bits_per_symbol, unsigned primitive_poly)
    : p_(bits_per_symbol), q_(1u << bits_per_symbol), poly_(primitive_poly) {
    if (p_ < 1 || p_ > 8) throw InvalidArgument("field: p must be in [1, 8], got " + std::to_string(p_));
    if (poly_ >> p_ != 1u)
        throw InvalidArgument("field: primitive polynomial must have degree " + std::to_string(p_));

    log_.assign(q_, 0);
    antilog_.assign(q_ - 1, 0);

    // Enumerate powers of x, reducing by the polynomial. A primitive
    // polynomial visits every nonzero element exactly once before wrapping.
    std::vector<bool> seen(q_, false);
    unsigned b = 1;
    for (unsigned e = 0; e < q_ - 1; ++e) {
        if (seen[b])
            throw InvalidArgument("field: polynomial 0x" + std::to_string(poly_) + " is not primitive");
        seen[b] = true;
        log_[b] = static_cast<Symbol>(e);
        antilog_[e] = static_cast<Symbol>(b);
        b <<= 1;
        if (b & q_) b = (b ^ poly_) & (q_ - 1);
    }
    if (b != 1) throw InvalidArgument("field: polynomial is not primitive (period mismatch)");

    inv_.assign(q_, 0);
    for (unsigned a = 1; a < q_; ++a)
        inv_[a] = antilog_[(q_ - 1 - log_[a]) % (q_ - 1)];

    mul_table_.assign(static_cast<std::size_t>(q_) * q_, 0);
    for (unsigned a = 1; a < q_; ++a) {
        Symbol* row = mul_table_.data() + (static_cast<std::size_t>(a) << p_);
        for (unsigned bb = 1; bb < q_; ++bb)
            row[bb] = antilog_[(log_[a] + log_[bb]) % (q_ - 1)];
    }
}

Symbol Field::inv(Symbol a) const {
    if (a == 0) throw InvalidArgument("field: inverse of 0 requested");
    return inv_[a];
}

void symbol_to_bits(Symbol a, unsigned p, std::uint8_t* out) {
    for (unsigned t = 0; t < p; ++t) out[t] = static_cast<std::uint8_t>((a >> t) & 1u);
}

Symbol bits_to_symbol(const std::uint8_t* bits, unsigned p) {
    Symbol a = 0;
    for (unsigned t = 0; t < p; ++t)
        if (bits[t]) a = static_cast<Symbol>(a | (1u << t));
    return a;
}

} // namespace nbldpc
