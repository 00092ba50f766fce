#include "mrsusp/replay.hpp"

#include <stdexcept>

namespace mrsusp {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw std::invalid_argument("ReplayBuffer: capacity must be positive");
    store_.reserve(capacity);
}

void ReplayBuffer::push(Transition t) {
    if (store_.size() < capacity_) {
        store_.push_back(std::move(t));
    } else {
        store_[cursor_] = std::move(t);
    }
    cursor_ = (cursor_ + 1) % capacity_;
}

std::vector<std::size_t> ReplayBuffer::sample_indices(int batch_size,
                                                      std::mt19937_64& rng) const {
    if (store_.empty()) throw std::logic_error("ReplayBuffer: sampling from empty buffer");
    if (batch_size < 1) throw std::invalid_argument("ReplayBuffer: batch_size must be >= 1");
    std::uniform_int_distribution<std::size_t> pick(0, store_.size() - 1);
    std::vector<std::size_t> idx(static_cast<std::size_t>(batch_size));
    for (auto& i : idx) i = pick(rng);
    return idx;
}

TransitionBatch ReplayBuffer::sample(int batch_size, std::mt19937_64& rng) const {
    const auto idx = sample_indices(batch_size, rng);
    const Eigen::Index obs_dim = store_.front().s.size();
    TransitionBatch batch;
    batch.s.resize(batch_size, obs_dim);
    batch.s_next.resize(batch_size, obs_dim);
    batch.a.resize(batch_size);
    batch.r.resize(batch_size);
    batch.terminal.resize(static_cast<std::size_t>(batch_size));
    for (int k = 0; k < batch_size; ++k) {
        const Transition& t = store_[idx[static_cast<std::size_t>(k)]];
        batch.s.row(k) = t.s.transpose();
        batch.s_next.row(k) = t.s_next.transpose();
        batch.a(k) = t.a;
        batch.r(k) = t.r;
        batch.terminal[static_cast<std::size_t>(k)] = t.terminal ? 1 : 0;
    }
    return batch;
}

}  // namespace mrsusp
