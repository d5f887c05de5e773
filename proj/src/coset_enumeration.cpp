#include "qtensor/coset_enumeration.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "qtensor/error.hpp"

namespace qtensor {

namespace {

constexpr std::int32_t kUndefined = -1;

class Enumerator {
 public:
  Enumerator(std::size_t generators, std::span<const Word> relators, const EnumerationOptions& options)
      : cols_(2 * generators), options_(options) {
    if (options.max_cosets < 1) throw InputError("max_cosets must be at least 1");
    if (options.max_cosets > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
      throw InputError("max_cosets exceeds the 32-bit coset index range");
    }
    for (const auto& r : relators) {
      auto cols = to_columns(r);
      for (auto c : cols) {
        if (c >= cols_) throw InputError("relator uses a generator outside the presentation");
      }
      if (!cols.empty()) relators_.push_back(std::move(cols));
    }
    std::stable_sort(relators_.begin(), relators_.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    grow(std::min<std::size_t>(options.max_cosets, 1024));
    new_coset();
  }

  bool run(std::span<const Word> subgroup) {
    if (cols_ == 0) return true;
    for (const auto& w : subgroup) {
      auto cols = to_columns(w);
      for (auto c : cols) {
        if (c >= cols_) throw InputError("subgroup generator uses a generator outside the presentation");
      }
      while (!scan_and_fill(0, cols)) {
        if (!make_room(0)) return false;
      }
    }
    std::size_t cur = 0;
    while (cur < next_) {
      if (!alive(cur)) {
        ++cur;
        continue;
      }
      bool restart = false;
      for (const auto& r : relators_) {
        if (!scan_and_fill(static_cast<std::int32_t>(cur), r)) {
          if (!make_room(cur)) return false;
          cur = remapped_cursor_;
          restart = true;
          break;
        }
        if (!alive(cur)) break;
      }
      if (restart) continue;
      if (!alive(cur)) {
        ++cur;
        continue;
      }
      for (std::uint32_t x = 0; x < cols_; ++x) {
        if (row(cur)[x] == kUndefined) {
          if (!define(static_cast<std::int32_t>(cur), x)) {
            if (!make_room(cur)) return false;
            cur = remapped_cursor_;
            restart = true;
            break;
          }
        }
      }
      if (restart) continue;
      ++cur;
    }
    return true;
  }

  CosetTable finish(std::size_t generators) {
    // Standardize: breadth-first renumbering from coset 0.
    std::vector<std::int32_t> order;
    std::vector<std::int32_t> label(next_, kUndefined);
    order.reserve(live_);
    label[0] = 0;
    order.push_back(0);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const std::int32_t* r = row(static_cast<std::size_t>(order[head]));
      for (std::uint32_t x = 0; x < cols_; ++x) {
        const std::int32_t d = r[x];
        if (d < 0) throw InternalError("coset table incomplete after enumeration");
        if (label[static_cast<std::size_t>(d)] == kUndefined) {
          label[static_cast<std::size_t>(d)] = static_cast<std::int32_t>(order.size());
          order.push_back(d);
        }
      }
    }
    std::vector<std::int32_t> out(order.size() * cols_);
    for (std::size_t i = 0; i < order.size(); ++i) {
      const std::int32_t* r = row(static_cast<std::size_t>(order[i]));
      for (std::uint32_t x = 0; x < cols_; ++x) out[i * cols_ + x] = label[static_cast<std::size_t>(r[x])];
    }
    stats_.max_live = std::max(stats_.max_live, live_);
    const std::size_t n = order.size();
    table_.clear();
    table_.shrink_to_fit();
    return CosetTable(generators, n, std::move(out), EnumerationStatus::complete, stats_);
  }

  EnumerationStats stats() const { return stats_; }

 private:
  std::int32_t* row(std::size_t c) { return table_.data() + c * cols_; }
  bool alive(std::size_t c) const { return forward_[c] == static_cast<std::int32_t>(c); }

  void grow(std::size_t rows) {
    rows = std::min(rows, options_.max_cosets);
    if (rows <= capacity_) return;
    table_.resize(rows * cols_, kUndefined);
    forward_.resize(rows, kUndefined);
    capacity_ = rows;
  }

  std::int32_t new_coset() {
    const auto c = static_cast<std::int32_t>(next_++);
    forward_[static_cast<std::size_t>(c)] = c;
    std::fill_n(row(static_cast<std::size_t>(c)), cols_, kUndefined);
    ++live_;
    ++stats_.total_defined;
    stats_.max_live = std::max(stats_.max_live, live_);
    return c;
  }

  bool define(std::int32_t c, std::uint32_t x) {
    if (next_ == capacity_) {
      if (capacity_ >= options_.max_cosets) return false;
      grow(capacity_ * 2);
    }
    const std::int32_t d = new_coset();
    row(static_cast<std::size_t>(c))[x] = d;
    row(static_cast<std::size_t>(d))[x ^ 1U] = c;
    return true;
  }

  // Returns false when a definition was needed but no space is left.
  bool scan_and_fill(std::int32_t c, const std::vector<std::uint32_t>& w) {
    std::int32_t f = c, b = c;
    std::ptrdiff_t i = 0, j = static_cast<std::ptrdiff_t>(w.size()) - 1;
    while (true) {
      std::int32_t next;
      while (i <= j && (next = row(static_cast<std::size_t>(f))[w[static_cast<std::size_t>(i)]]) >= 0) {
        f = next;
        ++i;
      }
      if (i > j) {
        if (f != b) coincidence(f, b);
        return true;
      }
      while (j >= i && (next = row(static_cast<std::size_t>(b))[w[static_cast<std::size_t>(j)] ^ 1U]) >= 0) {
        b = next;
        --j;
      }
      if (j < i) {
        coincidence(f, b);
        return true;
      }
      if (i == j) {
        const std::uint32_t x = w[static_cast<std::size_t>(i)];
        row(static_cast<std::size_t>(f))[x] = b;
        row(static_cast<std::size_t>(b))[x ^ 1U] = f;
        return true;
      }
      if (!define(f, w[static_cast<std::size_t>(i)])) return false;
    }
  }

  void scan(std::int32_t c, const std::vector<std::uint32_t>& w) {
    std::int32_t f = c, b = c;
    std::ptrdiff_t i = 0, j = static_cast<std::ptrdiff_t>(w.size()) - 1;
    std::int32_t next;
    while (i <= j && (next = row(static_cast<std::size_t>(f))[w[static_cast<std::size_t>(i)]]) >= 0) {
      f = next;
      ++i;
    }
    if (i > j) {
      if (f != b) coincidence(f, b);
      return;
    }
    while (j >= i && (next = row(static_cast<std::size_t>(b))[w[static_cast<std::size_t>(j)] ^ 1U]) >= 0) {
      b = next;
      --j;
    }
    if (j < i) {
      coincidence(f, b);
    } else if (i == j) {
      const std::uint32_t x = w[static_cast<std::size_t>(i)];
      row(static_cast<std::size_t>(f))[x] = b;
      row(static_cast<std::size_t>(b))[x ^ 1U] = f;
    }
  }

  std::int32_t rep(std::int32_t k) {
    std::int32_t l = k;
    while (forward_[static_cast<std::size_t>(l)] != l) l = forward_[static_cast<std::size_t>(l)];
    while (forward_[static_cast<std::size_t>(k)] != k) {
      const std::int32_t s = forward_[static_cast<std::size_t>(k)];
      forward_[static_cast<std::size_t>(k)] = l;
      k = s;
    }
    return l;
  }

  void merge(std::int32_t k, std::int32_t l) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    const std::int32_t lo = std::min(k, l), hi = std::max(k, l);
    forward_[static_cast<std::size_t>(hi)] = lo;
    queue_.push_back(hi);
    --live_;
  }

  void coincidence(std::int32_t a, std::int32_t b) {
    ++stats_.coincidences;
    queue_.clear();
    merge(a, b);
    for (std::size_t i = 0; i < queue_.size(); ++i) {
      const std::int32_t e = queue_[i];
      for (std::uint32_t x = 0; x < cols_; ++x) {
        const std::int32_t f = row(static_cast<std::size_t>(e))[x];
        if (f < 0) continue;
        row(static_cast<std::size_t>(f))[x ^ 1U] = kUndefined;
        const std::int32_t e1 = rep(e), f1 = rep(f);
        const std::int32_t ex = row(static_cast<std::size_t>(e1))[x];
        if (ex >= 0) {
          merge(f1, ex);
          continue;
        }
        const std::int32_t fx = row(static_cast<std::size_t>(f1))[x ^ 1U];
        if (fx >= 0) {
          merge(e1, fx);
          continue;
        }
        row(static_cast<std::size_t>(e1))[x] = f1;
        row(static_cast<std::size_t>(f1))[x ^ 1U] = e1;
      }
    }
  }

  // Lookahead from `cur` followed by compaction. Sets remapped_cursor_.
  bool make_room(std::size_t cur) {
    if (options_.lookahead) {
      ++stats_.lookaheads;
      for (std::size_t c = cur; c < next_; ++c) {
        for (const auto& r : relators_) {
          if (!alive(c)) break;
          scan(static_cast<std::int32_t>(c), r);
        }
      }
    }
    compact(cur);
    return next_ < options_.max_cosets;
  }

  void compact(std::size_t cur) {
    std::vector<std::int32_t> label(next_, kUndefined);
    std::size_t n = 0;
    remapped_cursor_ = 0;
    bool cursor_set = false;
    for (std::size_t c = 0; c < next_; ++c) {
      if (!cursor_set && c >= cur && alive(c)) {
        remapped_cursor_ = n;
        cursor_set = true;
      }
      if (alive(c)) label[c] = static_cast<std::int32_t>(n++);
    }
    if (!cursor_set) remapped_cursor_ = n;
    for (std::size_t c = 0; c < next_; ++c) {
      if (!alive(c)) continue;
      const std::size_t to = static_cast<std::size_t>(label[c]);
      std::int32_t* src = row(c);
      std::int32_t* dst = row(to);
      for (std::uint32_t x = 0; x < cols_; ++x) dst[x] = src[x] < 0 ? kUndefined : label[static_cast<std::size_t>(src[x])];
    }
    for (std::size_t c = 0; c < n; ++c) forward_[c] = static_cast<std::int32_t>(c);
    next_ = n;
    live_ = n;
  }

  std::uint32_t cols_;
  EnumerationOptions options_;
  std::vector<std::vector<std::uint32_t>> relators_;
  std::vector<std::int32_t> table_;
  std::vector<std::int32_t> forward_;
  std::vector<std::int32_t> queue_;
  std::size_t capacity_ = 0;
  std::size_t next_ = 0;
  std::size_t live_ = 0;
  std::size_t remapped_cursor_ = 0;
  EnumerationStats stats_;
};

}  // namespace

std::uint32_t CosetTable::trace(std::uint32_t coset, const Word& w) const {
  for (const auto& l : w.letters()) {
    const std::uint32_t col = 2 * l.generator + (l.exponent < 0 ? 1U : 0U);
    const std::int32_t n = l.exponent < 0 ? -l.exponent : l.exponent;
    for (std::int32_t i = 0; i < n; ++i) coset = act(coset, col);
  }
  return coset;
}

bool CosetTable::relators_hold(std::span<const Word> relators) const {
  if (!complete()) return false;
  for (const auto& r : relators) {
    for (std::uint32_t c = 0; c < cosets_; ++c) {
      if (trace(c, r) != c) return false;
    }
  }
  return true;
}

std::string CosetTable::to_csv() const {
  std::ostringstream os;
  os << "coset,generator,image\n";
  for (std::uint32_t c = 0; c < cosets_; ++c) {
    for (std::uint32_t x = 0; x < columns(); ++x) {
      os << c << ",g" << (x / 2 + 1) << (x % 2 ? "^-1" : "") << ',' << act(c, x) << '\n';
    }
  }
  return os.str();
}

CosetTable enumerate_cosets(std::size_t generators, std::span<const Word> relators, std::span<const Word> subgroup,
                            const EnumerationOptions& options) {
  Enumerator e(generators, relators, options);
  if (!e.run(subgroup)) return CosetTable(generators, 0, {}, EnumerationStatus::exceeded_limit, e.stats());
  return e.finish(generators);
}

CosetTable todd_coxeter(const FpPresentation& p, std::span<const Word> subgroup, std::size_t max_cosets) {
  EnumerationOptions options;
  options.max_cosets = max_cosets;
  return enumerate_cosets(p.generator_count, p.relators, subgroup, options);
}

}  // namespace qtensor
