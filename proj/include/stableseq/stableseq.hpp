#ifndef STABLESEQ_STABLESEQ_HPP
#define STABLESEQ_STABLESEQ_HPP

#include "stableseq/bitset.hpp"
#include "stableseq/bounds.hpp"
#include "stableseq/combinatorics.hpp"
#include "stableseq/corpus.hpp"
#include "stableseq/cube_estimates.hpp"
#include "stableseq/cube_structure.hpp"
#include "stableseq/error.hpp"
#include "stableseq/exact_count.hpp"
#include "stableseq/graph.hpp"
#include "stableseq/interval.hpp"
#include "stableseq/percolation.hpp"
#include "stableseq/seq_analysis.hpp"
#include "stableseq/serialize.hpp"
#include "stableseq/verification.hpp"

#endif // STABLESEQ_STABLESEQ_HPP
