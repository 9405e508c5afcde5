#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "spectilt/torsion.hpp"
#include "spectilt/transpose.hpp"

namespace spectilt {

/// Runs f(0..n-1) on up to `jobs` threads. The first exception thrown by
/// any task is rethrown on the caller's thread after all tasks finish.
inline void parallel_for(int jobs, int n, const std::function<void(int)>& f) {
  if (jobs <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto worker = [&] {
    for (int i; (i = next.fetch_add(1)) < n;) {
      try {
        f(i);
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min(jobs, n); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

/// Memo table for the derived modules and invariants one classification
/// run asks for repeatedly. Keys are presentation strings, so equal
/// presentations share entries. Safe to share between threads; a value may
/// be computed twice under contention but is stored once.
class Workspace {
 public:
  explicit Workspace(RingPtr ring, int jobs = 1) : ring_(std::move(ring)), jobs_(jobs < 1 ? 1 : jobs) {}

  const RingPtr& ring() const { return ring_; }
  int jobs() const { return jobs_; }

  bool gorenstein() const { return ring_->is_polynomial() || ring_->gorenstein_asserted(); }

  FpModule quotient(const Prime& p) {
    return module("R/" + key(p), [&] { return FpModule::quotient(ring_, p.ideal); });
  }

  /// Tr(Omega^i(R/p)).
  FpModule tr_syzygy(const Prime& p, int i) {
    return module("TrOmega" + std::to_string(i) + "|" + key(p), [&] { return prune(transpose(syzygy_module(quotient(p), i)).module); });
  }

  FpModule lp(const Prime& p) {
    return module("L|" + key(p), [&] { return lp_module(p, ring_); });
  }

  int bass(int i, const Prime& p, const FpModule& m) {
    return integer("mu" + std::to_string(i) + "|" + key(p) + "|" + m.to_string(), [&] {
      auto q = quotient(p);
      auto r = resolution(q, i + 1);
      return bass_invariant(i, p, m, r.get());
    });
  }

  FpModule ext(int i, const FpModule& a, const FpModule& b) {
    return module("Ext" + std::to_string(i) + "|" + a.to_string() + "|" + b.to_string(),
                  [&] {
                    auto r = resolution(a, i + 1);
                    return prune(ext_module(i, a, b, r.get()));
                  });
  }

  FpModule tor(int i, const FpModule& a, const FpModule& b) {
    return module("Tor" + std::to_string(i) + "|" + a.to_string() + "|" + b.to_string(),
                  [&] {
                    auto r = resolution(a, i + 1);
                    return prune(tor_module(i, a, b, r.get()));
                  });
  }

  FpModule syzygy(const FpModule& m, int i) {
    return module("Omega" + std::to_string(i) + "|" + m.to_string(), [&] { return syzygy_module(m, i); });
  }

  /// mu_i(p, R) for every prime of the window, i = 0..max_i.
  std::vector<std::vector<int>> bass_table(const Window& w, const FpModule& m, int max_i) {
    std::vector<std::vector<int>> t(max_i + 1, std::vector<int>(w.size(), 0));
    parallel_for(jobs_, (max_i + 1) * w.size(), [&](int k) {
      int i = k / w.size(), j = k % w.size();
      t[i][j] = bass(i, w.prime(j), m);
    });
    return t;
  }

  /// Minimal resolution of `m` to length `len`, reused across calls.
  std::shared_ptr<const Complex> resolution(const FpModule& m, int len) {
    const std::string k = m.to_string();
    auto enough = [&](const std::shared_ptr<const Complex>& c) { return c && (c->length() >= len || c->complete); };
    {
      std::lock_guard lock(mu_);
      if (auto it = res_.find(k); it != res_.end() && enough(it->second)) return it->second;
    }
    auto c = std::make_shared<const Complex>(free_resolution(m, len, true, false));
    std::lock_guard lock(mu_);
    auto& slot = res_[k];
    if (!enough(slot)) slot = c;
    return slot;
  }

 private:
  static std::string key(const Prime& p) { return p.ideal.to_string(); }

  FpModule module(const std::string& k, const std::function<FpModule()>& make) {
    {
      std::lock_guard lock(mu_);
      if (auto it = mods_.find(k); it != mods_.end()) return it->second;
    }
    FpModule v = make();
    std::lock_guard lock(mu_);
    return mods_.emplace(k, std::move(v)).first->second;
  }

  int integer(const std::string& k, const std::function<int()>& make) {
    {
      std::lock_guard lock(mu_);
      if (auto it = ints_.find(k); it != ints_.end()) return it->second;
    }
    int v = make();
    std::lock_guard lock(mu_);
    return ints_.emplace(k, v).first->second;
  }

  RingPtr ring_;
  int jobs_;
  std::mutex mu_;
  std::map<std::string, FpModule> mods_;
  std::map<std::string, int> ints_;
  std::map<std::string, std::shared_ptr<const Complex>> res_;
};

}  // namespace spectilt
