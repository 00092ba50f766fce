#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

namespace mrsusp {

struct Transition {
    Eigen::VectorXd s;
    double a;
    double r;
    Eigen::VectorXd s_next;
    bool terminal;
};

/// Sampled minibatch in matrix form, one row per transition.
struct TransitionBatch {
    Eigen::MatrixXd s;
    Eigen::VectorXd a;
    Eigen::VectorXd r;
    Eigen::MatrixXd s_next;
    std::vector<std::uint8_t> terminal;

    Eigen::Index size() const { return s.rows(); }
};

/// Ring buffer; once full, the oldest transitions are overwritten. Sampling
/// is uniform with replacement over the current contents.
class ReplayBuffer {
  public:
    explicit ReplayBuffer(std::size_t capacity);

    void push(Transition t);
    TransitionBatch sample(int batch_size, std::mt19937_64& rng) const;
    std::vector<std::size_t> sample_indices(int batch_size, std::mt19937_64& rng) const;

    std::size_t size() const { return store_.size(); }
    std::size_t capacity() const { return capacity_; }
    const Transition& at(std::size_t i) const { return store_[i]; }

  private:
    std::size_t capacity_;
    std::size_t cursor_ = 0;
    std::vector<Transition> store_;
};

}  // namespace mrsusp
