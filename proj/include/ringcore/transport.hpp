#ifndef RINGCORE_TRANSPORT_HPP
#define RINGCORE_TRANSPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "ringcore/common.hpp"

// Balanced transportation problems on a dense cost matrix: rows ship their
// supply, columns receive their demand, at minimum total cost. Both solvers
// return a full row-major flow matrix.

namespace ringcore::transport {

struct Problem {
  std::vector<double> supply;  // one per row
  std::vector<double> demand;  // one per column
  std::vector<double> cost;    // rows x cols, row-major, nonnegative

  std::size_t rows() const { return supply.size(); }
  std::size_t cols() const { return demand.size(); }
};

struct Solution {
  std::vector<double> flow;  // rows x cols, row-major
  double objective = 0.0;
  std::size_t iterations = 0;
};

inline double Objective(const Problem& problem, const std::vector<double>& flow) {
  double total = 0.0;
  for (std::size_t c = 0; c < flow.size(); ++c) total += flow[c] * problem.cost[c];
  return total;
}

// Transportation simplex: north-west-corner start, MODI (u-v potential)
// pricing with Dantzig's rule, falling back to Bland's lowest-index rule after
// a run of degenerate pivots. The basis is kept as a spanning tree over the
// rows + cols nodes.
class Simplex {
 public:
  explicit Simplex(const Problem& problem) : p_(problem), n_(problem.rows()), k_(problem.cols()) {}

  Solution Solve() {
    if (n_ == 0 || k_ == 0) throw Error("empty transportation problem");
    NorthWestCorner();
    double scale = 1.0;
    for (double c : p_.cost) scale = std::max(scale, std::abs(c));
    const double tol = 1e-12 * scale;
    const std::size_t max_iterations = 200 * (n_ + k_) * k_ + 1000;
    std::size_t degenerate_run = 0;
    std::size_t iter = 0;
    for (; iter < max_iterations; ++iter) {
      ComputePotentials();
      const bool bland = degenerate_run > 2 * (n_ + k_);
      const std::ptrdiff_t entering = PickEntering(tol, bland);
      if (entering < 0) break;
      const double theta = Pivot(static_cast<std::size_t>(entering));
      degenerate_run = theta > 0.0 ? 0 : degenerate_run + 1;
    }
    if (iter == max_iterations) throw Error("transportation simplex did not converge");
    Solution out;
    out.flow.assign(n_ * k_, 0.0);
    for (const Cell& c : basis_) out.flow[c.i * k_ + c.j] = std::max(0.0, c.x);
    out.objective = Objective(p_, out.flow);
    out.iterations = iter;
    return out;
  }

 private:
  struct Cell {
    std::size_t i;
    std::size_t j;
    double x;
  };

  std::size_t ColNode(std::size_t j) const { return n_ + j; }

  void AddBasic(std::size_t i, std::size_t j, double x) {
    const std::size_t id = basis_.size();
    basis_.push_back({i, j, x});
    adj_[i].push_back(id);
    adj_[ColNode(j)].push_back(id);
    is_basic_[i * k_ + j] = 1;
  }

  void NorthWestCorner() {
    adj_.assign(n_ + k_, {});
    is_basic_.assign(n_ * k_, 0);
    basis_.clear();
    basis_.reserve(n_ + k_ - 1);
    std::vector<double> ra = p_.supply, rb = p_.demand;
    std::size_t i = 0, j = 0;
    for (;;) {
      double amount;
      if (j == k_ - 1) {
        amount = ra[i];
      } else if (i == n_ - 1) {
        amount = rb[j];
      } else {
        amount = std::min(ra[i], rb[j]);
      }
      amount = std::max(0.0, amount);
      AddBasic(i, j, amount);
      ra[i] -= amount;
      rb[j] -= amount;
      if (i == n_ - 1 && j == k_ - 1) break;
      if (i == n_ - 1) {
        ++j;
      } else if (j == k_ - 1) {
        ++i;
      } else if (ra[i] <= rb[j]) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  void ComputePotentials() {
    u_.assign(n_, 0.0);
    v_.assign(k_, 0.0);
    std::vector<char> seen(n_ + k_, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      const std::size_t node = stack.back();
      stack.pop_back();
      for (std::size_t id : adj_[node]) {
        const Cell& c = basis_[id];
        const std::size_t other = node < n_ ? ColNode(c.j) : c.i;
        if (seen[other]) continue;
        seen[other] = 1;
        const double cost = p_.cost[c.i * k_ + c.j];
        if (node < n_) {
          v_[c.j] = cost - u_[c.i];
        } else {
          u_[c.i] = cost - v_[c.j];
        }
        stack.push_back(other);
      }
    }
  }

  std::ptrdiff_t PickEntering(double tol, bool bland) const {
    std::ptrdiff_t best = -1;
    double best_rc = -tol;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < k_; ++j) {
        const std::size_t cell = i * k_ + j;
        if (is_basic_[cell]) continue;
        const double rc = p_.cost[cell] - u_[i] - v_[j];
        if (rc < best_rc) {
          best_rc = rc;
          best = static_cast<std::ptrdiff_t>(cell);
          if (bland) return best;
        }
      }
    }
    return best;
  }

  // Tree path from column node of `j` to row node `i`, as basis ids.
  std::vector<std::size_t> TreePath(std::size_t i, std::size_t j) {
    const std::size_t target = ColNode(j);
    std::vector<std::ptrdiff_t> via(n_ + k_, -1);
    std::vector<char> seen(n_ + k_, 0);
    std::vector<std::size_t> queue{i};
    seen[i] = 1;
    for (std::size_t head = 0; head < queue.size() && !seen[target]; ++head) {
      const std::size_t node = queue[head];
      for (std::size_t id : adj_[node]) {
        const Cell& c = basis_[id];
        const std::size_t other = node < n_ ? ColNode(c.j) : c.i;
        if (seen[other]) continue;
        seen[other] = 1;
        via[other] = static_cast<std::ptrdiff_t>(id);
        queue.push_back(other);
      }
    }
    std::vector<std::size_t> path;
    std::size_t node = target;
    while (node != i) {
      const auto id = static_cast<std::size_t>(via[node]);
      path.push_back(id);
      const Cell& c = basis_[id];
      node = node < n_ ? ColNode(c.j) : c.i;
    }
    return path;  // starts at the column end
  }

  double Pivot(std::size_t entering) {
    const std::size_t ei = entering / k_, ej = entering % k_;
    const std::vector<std::size_t> path = TreePath(ei, ej);
    // Edges alternate -, +, -, ... starting at the column end.
    double theta = std::numeric_limits<double>::infinity();
    std::size_t leaving = path[0];
    for (std::size_t s = 0; s < path.size(); s += 2) {
      const Cell& c = basis_[path[s]];
      const double x = std::max(0.0, c.x);
      const std::size_t cell = c.i * k_ + c.j;
      const Cell& lc = basis_[leaving];
      if (x < theta || (x == theta && cell < lc.i * k_ + lc.j)) {
        theta = x;
        leaving = path[s];
      }
    }
    for (std::size_t s = 0; s < path.size(); ++s) {
      Cell& c = basis_[path[s]];
      c.x += (s % 2 == 0) ? -theta : theta;
      if (c.x < 0.0) c.x = 0.0;
    }
    // Replace the leaving cell by the entering one, reusing its slot.
    Cell& out = basis_[leaving];
    Detach(out.i, leaving);
    Detach(ColNode(out.j), leaving);
    is_basic_[out.i * k_ + out.j] = 0;
    out = {ei, ej, theta};
    adj_[ei].push_back(leaving);
    adj_[ColNode(ej)].push_back(leaving);
    is_basic_[entering] = 1;
    return theta;
  }

  void Detach(std::size_t node, std::size_t id) {
    auto& list = adj_[node];
    auto it = std::find(list.begin(), list.end(), id);
    *it = list.back();
    list.pop_back();
  }

  const Problem& p_;
  std::size_t n_;
  std::size_t k_;
  std::vector<Cell> basis_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<char> is_basic_;
  std::vector<double> u_;
  std::vector<double> v_;
};

// Successive shortest paths on source -> rows -> cols -> sink with Dijkstra
// over reduced costs. Used for problems too large for the dense simplex.
class ShortestPaths {
 public:
  explicit ShortestPaths(const Problem& problem) : p_(problem), n_(problem.rows()), k_(problem.cols()) {}

  Solution Solve() {
    if (n_ == 0 || k_ == 0) throw Error("empty transportation problem");
    BuildGraph();
    const std::size_t nodes = n_ + k_ + 2;
    const std::size_t source = n_ + k_, sink = n_ + k_ + 1;
    double total = 0.0;
    for (double s : p_.supply) total += s;
    const double tol = 1e-12 * std::max(1.0, total);
    std::vector<double> potential(nodes, 0.0), dist(nodes);
    std::vector<std::ptrdiff_t> via(nodes);
    double shipped = 0.0;
    std::size_t rounds = 0;
    constexpr double kInf = std::numeric_limits<double>::infinity();
    while (total - shipped > tol) {
      std::fill(dist.begin(), dist.end(), kInf);
      std::fill(via.begin(), via.end(), -1);
      using Item = std::pair<double, std::size_t>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
      dist[source] = 0.0;
      heap.emplace(0.0, source);
      while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d > dist[v]) continue;
        for (std::size_t a : out_[v]) {
          const Arc& arc = arcs_[a];
          if (arc.cap <= tol) continue;
          const double rc = std::max(0.0, arc.cost + potential[v] - potential[arc.to]);
          if (d + rc < dist[arc.to]) {
            dist[arc.to] = d + rc;
            via[arc.to] = static_cast<std::ptrdiff_t>(a);
            heap.emplace(dist[arc.to], arc.to);
          }
        }
      }
      if (!std::isfinite(dist[sink])) throw Error("mass mismatch");
      for (std::size_t v = 0; v < nodes; ++v) {
        if (std::isfinite(dist[v])) potential[v] += dist[v];
      }
      double push = total - shipped;
      for (std::size_t v = sink; v != source;) {
        const Arc& arc = arcs_[static_cast<std::size_t>(via[v])];
        push = std::min(push, arc.cap);
        v = arcs_[static_cast<std::size_t>(via[v]) ^ 1].to;
      }
      for (std::size_t v = sink; v != source;) {
        const auto a = static_cast<std::size_t>(via[v]);
        arcs_[a].cap -= push;
        arcs_[a ^ 1].cap += push;
        v = arcs_[a ^ 1].to;
      }
      shipped += push;
      ++rounds;
    }
    Solution out;
    out.flow.assign(n_ * k_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < k_; ++j) {
        // Reverse arc capacity equals the flow on the forward arc.
        out.flow[i * k_ + j] = std::max(0.0, arcs_[cell_arc_[i * k_ + j] ^ 1].cap);
      }
    }
    out.objective = Objective(p_, out.flow);
    out.iterations = rounds;
    return out;
  }

 private:
  struct Arc {
    std::size_t to;
    double cap;
    double cost;
  };

  void AddArc(std::size_t from, std::size_t to, double cap, double cost) {
    out_[from].push_back(arcs_.size());
    arcs_.push_back({to, cap, cost});
    out_[to].push_back(arcs_.size());
    arcs_.push_back({from, 0.0, -cost});
  }

  void BuildGraph() {
    const std::size_t source = n_ + k_, sink = n_ + k_ + 1;
    out_.assign(n_ + k_ + 2, {});
    arcs_.clear();
    cell_arc_.assign(n_ * k_, 0);
    constexpr double kUnbounded = std::numeric_limits<double>::max();
    for (std::size_t i = 0; i < n_; ++i) AddArc(source, i, p_.supply[i], 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < k_; ++j) {
        cell_arc_[i * k_ + j] = arcs_.size();
        AddArc(i, n_ + j, kUnbounded, p_.cost[i * k_ + j]);
      }
    }
    for (std::size_t j = 0; j < k_; ++j) AddArc(n_ + j, sink, p_.demand[j], 0.0);
  }

  const Problem& p_;
  std::size_t n_;
  std::size_t k_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::size_t> cell_arc_;
};

}  // namespace ringcore::transport

#endif  // RINGCORE_TRANSPORT_HPP
