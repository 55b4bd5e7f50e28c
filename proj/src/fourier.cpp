#include "ghlab/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <thread>

#include "ghlab/errors.hpp"

namespace ghlab {

namespace {

std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}

long linf(const Frequency& xi) {
  long n = 0;
  for (long v : xi) n = std::max(n, std::labs(v));
  return n;
}

std::size_t power(std::size_t n, std::size_t m) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < m; ++i) out *= n;
  return out;
}

// index of frequency xi on an n-point axis product
std::size_t torus_index(const Frequency& xi, std::size_t n) {
  std::size_t idx = 0;
  const long N = static_cast<long>(n);
  for (long v : xi) idx = idx * n + static_cast<std::size_t>(((v % N) + N) % N);
  return idx;
}

// every xi with |xi|_inf <= R in lexicographic order
std::vector<Frequency> box(std::size_t m, long R) {
  std::vector<Frequency> out;
  Frequency v(m, -R);
  while (true) {
    out.push_back(v);
    std::size_t i = m;
    while (true) {
      if (i == 0) return out;
      --i;
      if (v[i] < R) {
        ++v[i];
        for (std::size_t j = i + 1; j < m; ++j) v[j] = -R;
        break;
      }
    }
  }
}

// One m-dimensional FFT plan over n^m points; execution is reentrant.
class TorusPlan {
 public:
  TorusPlan(std::size_t m, std::size_t n, int sign) : size_(power(n, m)) {
    in_ = fftw_alloc_complex(size_);
    out_ = fftw_alloc_complex(size_);
    std::vector<int> dims(m, static_cast<int>(n));
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_ = fftw_plan_dft(static_cast<int>(m), dims.data(), in_, out_, sign, FFTW_ESTIMATE);
  }
  ~TorusPlan() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan_);
    fftw_free(in_);
    fftw_free(out_);
  }
  TorusPlan(const TorusPlan&) = delete;
  TorusPlan& operator=(const TorusPlan&) = delete;

  std::size_t size() const { return size_; }
  void run(const Complex* in, Complex* out) const {
    // new-array execution needs the planning alignment; copy through aligned buffers
    fftw_complex* a = fftw_alloc_complex(size_);
    fftw_complex* b = fftw_alloc_complex(size_);
    std::copy(in, in + size_, reinterpret_cast<Complex*>(a));
    fftw_execute_dft(plan_, a, b);
    std::copy(reinterpret_cast<Complex*>(b), reinterpret_cast<Complex*>(b) + size_, out);
    fftw_free(a);
    fftw_free(b);
  }

 private:
  std::size_t size_;
  fftw_complex* in_;
  fftw_complex* out_;
  fftw_plan plan_;
};

template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = count * t / threads; i < count * (t + 1) / threads; ++i) body(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

std::size_t TorusSamples::torus_size() const { return power(n, m); }

FourierSide::FourierSide(std::size_t m, long xi_max, std::vector<std::array<double, 2>> nodes)
    : m_(m), xi_max_(xi_max), nodes_(std::move(nodes)) {
  if (m == 0) throw InvalidArgument("torus dimension m must be >= 1");
  if (xi_max < 0) throw InvalidArgument("cutoff must be >= 0");
}

void FourierSide::set(const Frequency& xi, std::vector<Complex> samples) {
  if (xi.size() != m_ || linf(xi) > xi_max_) throw InvalidArgument("frequency outside the cutoff box");
  if (samples.size() != nodes_.size()) throw InvalidArgument("coefficient sample count differs from the node count");
  for (const auto& z : samples)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainViolation("non-finite Fourier coefficient");
  coef_[xi] = std::move(samples);
}

std::vector<Complex> FourierSide::get(const Frequency& xi) const {
  auto it = coef_.find(xi);
  return it == coef_.end() ? std::vector<Complex>(nodes_.size()) : it->second;
}

double FourierSide::hermitian_residual() const {
  double worst = 0;
  for (const auto& [xi, c] : coef_) {
    Frequency neg = xi;
    for (auto& v : neg) v = -v;
    const auto other = get(neg);
    for (std::size_t p = 0; p < c.size(); ++p) worst = std::max(worst, std::abs(other[p] - std::conj(c[p])));
  }
  return worst;
}

double max_abs_difference(const FourierSide& a, const FourierSide& b) {
  double worst = 0;
  auto scan = [&](const FourierSide& x, const FourierSide& y) {
    for (const auto& [xi, c] : x.coefficients()) {
      const auto o = y.get(xi);
      for (std::size_t p = 0; p < c.size(); ++p) worst = std::max(worst, std::abs(c[p] - o[p]));
    }
  };
  scan(a, b);
  scan(b, a);
  return worst;
}

FourierSide partial_fourier(const TorusSamples& u, long xi_max, unsigned threads) {
  if (u.n < static_cast<std::size_t>(2 * xi_max + 1))
    throw GridTooCoarse("torus grid of " + std::to_string(u.n) + " points per axis cannot resolve |xi| <= " +
                        std::to_string(xi_max) + " (needs >= " + std::to_string(2 * xi_max + 1) + ")");
  const std::size_t T = u.torus_size();
  if (u.values.size() != T * u.nodes.size()) throw InvalidArgument("sample array size mismatch");
  const TorusPlan plan(u.m, u.n, FFTW_FORWARD);
  const std::vector<Frequency> freqs = box(u.m, xi_max);
  std::vector<std::vector<Complex>> coef(freqs.size(), std::vector<Complex>(u.nodes.size()));
  const double scale = 1.0 / static_cast<double>(T);
  parallel_for(u.nodes.size(), threads, [&](std::size_t p) {
    std::vector<Complex> out(T);
    plan.run(u.values.data() + p * T, out.data());
    for (std::size_t f = 0; f < freqs.size(); ++f) coef[f][p] = out[torus_index(freqs[f], u.n)] * scale;
  });
  FourierSide F(u.m, xi_max, u.nodes);
  for (std::size_t f = 0; f < freqs.size(); ++f) F.set(freqs[f], std::move(coef[f]));
  return F;
}

TorusSamples synthesize(const FourierSide& F, std::size_t n, unsigned threads) {
  if (n < static_cast<std::size_t>(2 * F.xi_max() + 1))
    throw GridTooCoarse("torus grid of " + std::to_string(n) + " points per axis aliases |xi| <= " +
                        std::to_string(F.xi_max()));
  TorusSamples u;
  u.m = F.m();
  u.n = n;
  u.nodes = F.nodes();
  const std::size_t T = u.torus_size();
  u.values.assign(T * u.nodes.size(), Complex(0, 0));
  const TorusPlan plan(u.m, n, FFTW_BACKWARD);
  parallel_for(u.nodes.size(), threads, [&](std::size_t p) {
    std::vector<Complex> in(T, Complex(0, 0));
    for (const auto& [xi, c] : F.coefficients()) in[torus_index(xi, n)] += c[p];
    plan.run(in.data(), u.values.data() + p * T);
  });
  return u;
}

std::string decay_kind_name(DecayKind k) {
  switch (k) {
    case DecayKind::Rapid: return "RAPID";
    case DecayKind::Poly: return "POLY";
    case DecayKind::None: return "NONE";
  }
  return "UNKNOWN";
}

std::map<long, double> shell_maxima(const FourierSide& F) {
  std::map<long, double> S;
  for (const auto& [xi, c] : F.coefficients()) {
    const long r = linf(xi);
    if (r == 0) continue;
    double s = 0;
    for (const auto& z : c) s = std::max(s, std::abs(z));
    auto [it, fresh] = S.emplace(r, s);
    if (!fresh) it->second = std::max(it->second, s);
  }
  return S;
}

DecayReport decay_report(const FourierSide& F, const DecayThresholds& thresholds) {
  return decay_from_shells(F.xi_max(), shell_maxima(F), thresholds);
}

DecayReport decay_from_shells(long xi_max, std::map<long, double> shells, const DecayThresholds& th) {
  DecayReport rep;
  rep.xi_max = xi_max;
  rep.thresholds = th;
  rep.shells = std::move(shells);
  if (xi_max < 8) throw InsufficientShells("decay verdict needs a cutoff of at least 8, got " + std::to_string(xi_max));
  std::vector<std::pair<long, double>> support;
  for (const auto& [r, s] : rep.shells)
    if (r >= 1 && r <= xi_max && s > th.floor) support.emplace_back(r, s);
  if (support.size() < 3)
    throw InsufficientShells("decay verdict needs at least 3 shells above the floor, got " +
                             std::to_string(support.size()));

  const long lo8 = std::max(1L, xi_max / 8), lo4 = std::max(1L, xi_max / 4);
  // least-squares slope over the upper range, or the whole support when thin
  std::vector<std::pair<long, double>> fit;
  for (const auto& pr : support)
    if (pr.first >= lo8) fit.push_back(pr);
  if (fit.size() < 2) fit = support;
  {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double k = static_cast<double>(fit.size());
    for (const auto& [r, s] : fit) {
      const double x = std::log(static_cast<double>(r)), y = std::log(s);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double den = k * sxx - sx * sx;
    rep.alpha = den > 0 ? -(k * sxy - sx * sy) / den : 0.0;
  }

  // NONE: dyadic block maxima stay at the level of the first support shell
  {
    const double ref = support.front().second;
    std::map<int, double> block;
    for (const auto& [r, s] : support) {
      int k = 0;
      while ((1L << k) < r) ++k;
      block[k] = std::max(block[k], s);
    }
    bool flat = true;
    for (const auto& [k, s] : block) flat = flat && s >= th.none_factor * ref;
    if (flat) {
      rep.verdict = DecayKind::None;
      rep.rule = "dyadic block maxima >= " + std::to_string(th.none_factor) + " * S(r_1)";
      return rep;
    }
  }

  std::size_t upper = 0;
  for (const auto& pr : rep.shells) upper += pr.first >= lo8 && pr.first <= xi_max ? 1 : 0;
  rep.dense = upper == static_cast<std::size_t>(xi_max - lo8 + 1);
  if (rep.dense) {
    bool dominated = true;
    for (int N : th.orders) {
      double head = 0, tail = 0;
      for (const auto& [r, s] : rep.shells) {
        const double w = (s > th.floor ? s : 0.0) * std::pow(1.0 + static_cast<double>(r), N);
        if (r >= lo8 && r <= lo4) head = std::max(head, w);
        if (r >= lo4 && r <= xi_max) tail = std::max(tail, w);
      }
      dominated = dominated && tail <= head;
    }
    if (dominated) {
      rep.verdict = DecayKind::Rapid;
      rep.rule = "tail domination on [xi_max/4, xi_max] for every N";
      return rep;
    }
  } else if (support.size() >= th.lacunary_points) {
    bool growing = true;
    double prev = 0;
    for (std::size_t i = support.size() - th.lacunary_points; i < support.size(); ++i) {
      const double order = -std::log(support[i].second) / std::log(1.0 + static_cast<double>(support[i].first));
      if (i > support.size() - th.lacunary_points) growing = growing && order >= prev + th.lacunary_step;
      prev = order;
    }
    if (growing) {
      rep.verdict = DecayKind::Rapid;
      rep.rule = "lacunary support: effective order grows on the last " + std::to_string(th.lacunary_points) +
                 " shells";
      return rep;
    }
  }
  rep.verdict = DecayKind::Poly;
  rep.rule = "least-squares slope on [xi_max/8, xi_max]";
  return rep;
}

}  // namespace ghlab
