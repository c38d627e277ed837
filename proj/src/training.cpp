#include "bswpt/training.hpp"

#include <string>

namespace bswpt {

TrainingSequence gen_pn(long nc, RngStream& rng, double tc) {
    if (nc < 1) throw invalid_parameter_error("gen_pn: nc must be >= 1");
    TrainingSequence seq;
    seq.chips.resize(nc);
    seq.tc = tc;
    seq.kind = SequenceKind::PN;
    for (long n = 0; n < nc; ++n) seq.chips[n] = (rng.next_u64() >> 63) ? 1 : -1;
    return seq;
}

TrainingSequence gen_balanced(long ns, long chips_per_symbol, double tc) {
    if (ns < 1) throw invalid_parameter_error("gen_balanced: ns must be >= 1");
    if (chips_per_symbol < 2 || chips_per_symbol % 2 != 0)
        throw invalid_parameter_error(
            "gen_balanced: design criterion requires an even chips_per_symbol >= 2");
    TrainingSequence seq;
    seq.chips.resize(ns * chips_per_symbol);
    seq.tc = tc;
    seq.kind = SequenceKind::Balanced;
    const long half = chips_per_symbol / 2;
    for (long i = 0; i < ns; ++i)
        for (long k = 0; k < chips_per_symbol; ++k)
            seq.chips[i * chips_per_symbol + k] = (k < half) ? 1 : -1;
    return seq;
}

TrainingSequence gen_alternating(long ns, long chips_per_symbol, double tc) {
    if (ns < 1) throw invalid_parameter_error("gen_alternating: ns must be >= 1");
    if (chips_per_symbol < 2 || chips_per_symbol % 2 != 0)
        throw invalid_parameter_error(
            "gen_alternating: design criterion requires an even chips_per_symbol >= 2");
    TrainingSequence seq;
    seq.chips.resize(ns * chips_per_symbol);
    seq.tc = tc;
    seq.kind = SequenceKind::Balanced;
    for (std::size_t n = 0; n < seq.chips.size(); ++n) seq.chips[n] = (n % 2 == 0) ? 1 : -1;
    return seq;
}

TrainingSequence walsh_hadamard_row(long order, long row, double tc) {
    if (order < 2 || (order & (order - 1)) != 0)
        throw invalid_parameter_error("walsh_hadamard_row: order must be a power of two >= 2");
    if (row < 0 || row >= order)
        throw invalid_parameter_error("walsh_hadamard_row: row out of range");
    TrainingSequence seq;
    seq.chips.resize(order);
    seq.tc = tc;
    seq.kind = SequenceKind::WalshHadamard;
    // H[r][c] = (-1)^popcount(r & c) under the Sylvester recursion.
    for (long col = 0; col < order; ++col) {
        const int parity = __builtin_popcountll(static_cast<unsigned long long>(row & col)) & 1;
        seq.chips[col] = parity ? -1 : 1;
    }
    return seq;
}

TrainingSequence gen_lfsr(int degree, double tc) {
    // Feedback masks for maximal-length taps, right-shift convention: a
    // tap at position p contributes bit (degree - p), so bit 0 (the tap at
    // p = degree) is always present.
    static const struct {
        int degree;
        unsigned taps;
    } table[] = {
        {2, 0x3},    {3, 0x3},     {4, 0x3},  {5, 0x5},     {6, 0x3},
        {7, 0x3},    {8, 0x1d},    {9, 0x11}, {10, 0x9},    {11, 0x5},
        {12, 0x107}, {13, 0x27},   {14, 0x1007}, {15, 0x3}, {16, 0x100b},
    };
    const unsigned* taps = nullptr;
    for (const auto& e : table)
        if (e.degree == degree) taps = &e.taps;
    if (!taps)
        throw invalid_parameter_error("gen_lfsr: degree must be in [2, 16]");

    TrainingSequence seq;
    const long len = (1L << degree) - 1;
    seq.chips.resize(len);
    seq.tc = tc;
    seq.kind = SequenceKind::PN;
    unsigned state = 1;  // any nonzero start
    for (long n = 0; n < len; ++n) {
        const unsigned out = state & 1u;
        seq.chips[n] = out ? -1 : 1;
        const unsigned fb = __builtin_parity(state & *taps);
        state = (state >> 1) | (fb << (degree - 1));
    }
    return seq;
}

bool is_balanced(const TrainingSequence& seq, long ns) {
    const long nc = static_cast<long>(seq.chips.size());
    if (ns < 1 || nc % ns != 0)
        throw invalid_parameter_error(
            "is_balanced: ns (" + std::to_string(ns) + ") must divide the sequence length (" +
            std::to_string(nc) + ")");
    const long window = nc / ns;
    for (long i = 0; i < ns; ++i) {
        long sum = 0;
        for (long k = 0; k < window; ++k) sum += seq.chips[i * window + k];
        if (sum != 0) return false;
    }
    return true;
}

}  // namespace bswpt
