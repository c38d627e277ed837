#pragma once

// Training (chip) sequence generation and validation. A sequence is the
// +/-1 pattern the tag imprints on the backscattered ambient signal by
// toggling its reflection coefficient once per chip.

#include <vector>

#include "bswpt/rng.hpp"
#include "bswpt/types.hpp"

namespace bswpt {

enum class SequenceKind { PN, Balanced, WalshHadamard };

struct TrainingSequence {
    std::vector<int> chips;  // each +1 or -1
    double tc = 0.0;         // chip duration, s
    SequenceKind kind = SequenceKind::PN;
};

// i.i.d. equiprobable +/-1 chips; a fresh draw per trial.
TrainingSequence gen_pn(long nc, RngStream& rng, double tc = 0.0);

// Canonical per-symbol pattern: +1 for the first half of each symbol
// window, -1 for the second. chips_per_symbol must be even.
TrainingSequence gen_balanced(long ns, long chips_per_symbol, double tc = 0.0);

// Per-symbol pattern +1,-1,+1,-1,...: the fastest-switching sequence
// meeting the equal-count criterion. For chips_per_symbol == 2 it
// coincides with gen_balanced. Offset and symbol-duration-mismatch runs
// use this shape; with contiguous halves the waveform would be identical
// for every chip rate.
TrainingSequence gen_alternating(long ns, long chips_per_symbol, double tc = 0.0);

// Row of the Sylvester-construction Hadamard matrix, entries +/-1.
// order must be a power of two >= 2; 0 <= row < order.
TrainingSequence walsh_hadamard_row(long order, long row, double tc = 0.0);

// Maximal-length LFSR sequence (Fibonacci form, standard primitive taps),
// length 2^degree - 1, bits mapped {0 -> +1, 1 -> -1}. Diagnostic mode
// only; m-sequences do not meet the per-symbol balance criterion.
TrainingSequence gen_lfsr(int degree, double tc = 0.0);

// True iff every per-symbol window of nc/ns chips sums to zero.
// Throws if ns does not divide the sequence length.
bool is_balanced(const TrainingSequence& seq, long ns);

}  // namespace bswpt
