#ifndef H2NT_SGNS_HPP
#define H2NT_SGNS_HPP

#include <cstdint>
#include <vector>

#include "h2nt/embedding.hpp"
#include "h2nt/sym_matrix.hpp"
#include "h2nt/walk.hpp"

namespace h2nt {

struct SgnsConfig {
    int dim = 16;
    int window = 5;
    int negatives = 5;
    int epochs = 5;
    double lr_init = 0.025;  // linearly decayed to lr_init / 100
    std::uint64_t seed = 0;
    int threads = 1;  // > 1 switches to asynchronous (non-deterministic) updates
};

struct SgnsStats {
    std::vector<double> epoch_loss;  // mean negative-sampling objective per epoch
};

// Skip-gram with negative sampling over a walk corpus. Fixed window, negatives
// from the unigram^(3/4) corpus distribution, input vectors returned.
// Single-threaded runs are bit-reproducible for a fixed seed.
Embedding train_sgns(const WalkCorpus& corpus, int vocab_size, const SgnsConfig& cfg,
                     SgnsStats* stats = nullptr);

// generate_walks + train_sgns; dead (zero-row) nodes get zero embeddings.
Embedding embed_walk(const SymMatrix& q, const WalkConfig& wcfg, const SgnsConfig& scfg,
                     const std::vector<long long>& ids = {});

}  // namespace h2nt

#endif
