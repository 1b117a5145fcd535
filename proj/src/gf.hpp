#pragma once

#include <cstdint>
#include <vector>

namespace nbldpc {

// Element of GF(2^p), value < q. The bit pattern of the value is the binary
// image of the symbol under the fixed GF(2^p) ~ F_2^p isomorphism.
using Symbol = std::uint16_t;

// Arithmetic of GF(q), q = 2^p, 1 <= p <= 8. Multiplication and inversion go
// through log/antilog tables built from a primitive polynomial; a dense q*q
// product table derived from them serves the decoder hot path. Immutable
// after construction, safe for concurrent reads.
class Field {
public:
    explicit Field(unsigned bits_per_symbol);
    Field(unsigned bits_per_symbol, unsigned primitive_poly);

    unsigned p() const { return p_; }
    unsigned q() const { return q_; }
    unsigned primitive_poly() const { return poly_; }

    static unsigned canonical_primitive_poly(unsigned p);

    Symbol add(Symbol a, Symbol b) const { return static_cast<Symbol>(a ^ b); }

    Symbol mul(Symbol a, Symbol b) const {
        return mul_table_[(static_cast<unsigned>(a) << p_) | b];
    }

    // Throws InvalidArgument for a = 0.
    Symbol inv(Symbol a) const;

    Symbol div(Symbol a, Symbol b) const { return mul(a, inv(b)); }

    // Powers of the generator; exponent taken mod (q - 1).
    Symbol exp(unsigned e) const { return antilog_[e % (q_ - 1)]; }
    unsigned log(Symbol a) const { return log_[a]; }

    const std::vector<Symbol>& log_table() const { return log_; }
    const std::vector<Symbol>& antilog_table() const { return antilog_; }

    // Row of the product table for a fixed left factor, length q.
    const Symbol* mul_row(Symbol a) const {
        return mul_table_.data() + (static_cast<unsigned>(a) << p_);
    }

private:
    unsigned p_;
    unsigned q_;
    unsigned poly_;
    std::vector<Symbol> log_;      // index by element, defined for a != 0
    std::vector<Symbol> antilog_;  // index by exponent in [0, q-1)
    std::vector<Symbol> inv_;      // index by element, defined for a != 0
    std::vector<Symbol> mul_table_;
};

// Binary image, LSB-first: out[t] = bit t of a, t in [0, p).
void symbol_to_bits(Symbol a, unsigned p, std::uint8_t* out);

Symbol bits_to_symbol(const std::uint8_t* bits, unsigned p);

} // namespace nbldpc
