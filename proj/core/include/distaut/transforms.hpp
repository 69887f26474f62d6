#pragma once

#include <cstddef>

#include "distaut/machine.hpp"

namespace distaut {

// Round-based simulation of the synchronous run under any fair liberal or
// exclusive schedule. States (past, current, phase mod 3); beta unchanged.
Machine synchronize(const Machine& m);

// Liberal-strong machine -> exclusive-strong machine with the same verdicts.
// States (past, current, round mod 3, flag); 6|Q|^2 states.
Machine liberal_strong_to_exclusive_strong(const Machine& m);

// Exclusive-strong machine -> liberal-strong machine. Q' = Q u Q^2: a node
// first records its intended move and commits it only while no neighbor is
// in an intermediate state. If m halts, its terminal states stay terminal.
Machine exclusive_strong_to_liberal_strong(const Machine& m);

// Exclusive-weak machine -> machine whose synchronous run has the same
// verdict. Two copies of M advanced alternately; Y' = Y x Y x {0,1}.
Machine exclusive_weak_to_synchronous_weak(const Machine& m);

enum class Combinator { And, Or, Left };

// Both machines run side by side on the same labels. And: Y = Y1 x Y2,
// N = (N1 x Q2) u (Q1 x N2). Or: Y = (Y1 x Q2) u (Q1 x Y2), N = N1 x N2.
// Left: verdict sets of the first machine only.
Machine product(const Machine& a, const Machine& b, Combinator how);

// Set-detection (beta = 1) machine simulating m on graphs of maximum degree
// at most k, counting distinct neighbors instead of equal states.
Machine decount_bounded_degree(const Machine& m, std::size_t k);

}  // namespace distaut
