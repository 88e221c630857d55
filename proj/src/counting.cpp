#include "hforms/counting.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <numeric>
#include <thread>

namespace hforms {

namespace {

long long floor_ll(const BigRational& x) {
  const Integer f = floor(x);
  if (!f.fits_slong_p()) throw std::domain_error("value out of the supported coordinate range");
  return f.get_si();
}

// floor(rho^2): an integer norm x^2 + y^2 is <= rho^2 exactly when it is <= this.
long long norm_bound(const BigRational& rho) { return floor_ll(rho * rho); }

long long isqrt_ll(long long n) {
  if (n < 0) return -1;
  auto r = static_cast<long long>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

long long gcd_ll(long long a, long long b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

}  // namespace

void for_each_primitive_point(const BigRational& rho, const std::function<void(LatticePoint)>& fn) {
  if (rho < 1) throw std::domain_error("primitive_points requires rho >= 1");
  const long long r2 = norm_bound(rho);
  const long long r = isqrt_ll(r2);
  for (long long x = -r; x <= r; ++x) {
    const long long ymax = isqrt_ll(r2 - x * x);
    for (long long y = -ymax; y <= ymax; ++y) {
      if (gcd_ll(x, y) == 1) fn({x, y});
    }
  }
}

std::vector<LatticePoint> primitive_points(const BigRational& rho) {
  std::vector<LatticePoint> out;
  for_each_primitive_point(rho, [&](LatticePoint p) { out.push_back(p); });
  return out;
}

std::uint64_t count_primitive_points(const BigRational& rho) {
  std::uint64_t n = 0;
  for_each_primitive_point(rho, [&](LatticePoint) { ++n; });
  return n;
}

const char* to_string(RegionKind k) {
  switch (k) {
    case RegionKind::ThmMain: return "main";
    case RegionKind::ThmReduced: return "reduced";
    case RegionKind::FullH: return "full";
    case RegionKind::Gprime: return "gprime";
    case RegionKind::Wedge: return "wedge";
  }
  return "?";
}

RegionKind parse_region_kind(const std::string& text) {
  for (RegionKind k : {RegionKind::ThmMain, RegionKind::ThmReduced, RegionKind::FullH, RegionKind::Gprime,
                       RegionKind::Wedge}) {
    if (text == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown region kind: " + text);
}

namespace {

QuadraticSurd sqrt_rational(const BigRational& x) {
  // sqrt(p/q) = sqrt(p q) / q
  const QuadraticSurd root = QuadraticSurd::sqrt(Integer(x.get_num() * x.get_den()));
  return root / QuadraticSurd(Integer(x.get_den()));
}

}  // namespace

QuadraticSurd CountQuery::effective_kappa() const { return kappa ? *kappa : sqrt_rational(delta); }

void CountQuery::validate() const {
  if (delta <= 0) throw std::domain_error("delta must be positive");
  if (rho <= 0) throw std::domain_error("rho must be positive");
  if (kappa && kappa->sign() < 0) throw std::domain_error("kappa must be nonnegative");
  if (workers == 0) throw std::domain_error("workers must be at least 1");
}

bool SplitCheck::holds() const {
  const long long diff = static_cast<long long>(h) - 2 * static_cast<long long>(g + gprime);
  return diff >= -2 && diff <= 2;
}

namespace {

// Axis-aligned box in (X, Y) = g^{-1} p coordinates.
struct Box {
  double x0, x1, y0, y1;
};

struct Hit {
  LatticePoint p;
  long long norm2;
  QuadraticSurd X, Y, Q;
};

using Predicate = std::function<bool(const QuadraticSurd& X, const QuadraticSurd& Y, const QuadraticSurd& Q)>;

// Cover of {sx X > 0, sy Y > 0, |XY| < h, |X| <= xmax, |Y| <= ymax} by a core square
// and dyadic boxes along both asymptotes.
void cover_quadrant(int sx, int sy, double h, double xmax, double ymax, bool y_tentacle, std::vector<Box>& out) {
  const double s = std::sqrt(h);
  std::vector<Box> q{{0, s, 0, s}};
  for (double lo = s; lo < xmax; lo *= 2) q.push_back({lo, std::min(2 * lo, xmax), 0, h / lo});
  if (y_tentacle) {
    for (double lo = s; lo < ymax; lo *= 2) q.push_back({0, h / lo, lo, std::min(2 * lo, ymax)});
  }
  for (Box b : q) {
    constexpr double rel = 1e-9;
    b.x0 -= rel * (1 + b.x0);
    b.y0 -= rel * (1 + b.y0);
    b.x1 += rel * (1 + b.x1);
    b.y1 += rel * (1 + b.y1);
    if (sx < 0) b = {-b.x1, -b.x0, b.y0, b.y1};
    if (sy < 0) b = {b.x0, b.x1, -b.y1, -b.y0};
    out.push_back(b);
  }
}

struct Coeffs {
  double a, b, c, d;
};

// lo <= alpha x + beta y <= hi as a y-range for fixed x; false if empty.
bool constrain(double alpha, double beta, double lo, double hi, double x, double& ylo, double& yhi) {
  const double ax = alpha * x;
  if (beta == 0) {
    const double m = 1e-9 * (1 + std::abs(ax));
    return ax >= lo - m && ax <= hi + m;
  }
  double l = (lo - ax) / beta, u = (hi - ax) / beta;
  if (beta < 0) std::swap(l, u);
  ylo = std::max(ylo, l);
  yhi = std::min(yhi, u);
  return ylo <= yhi;
}

struct Job {
  std::size_t box;
  long long x0, x1;
};

class Enumerator {
 public:
  Enumerator(const BinaryForm& form, std::vector<Box> boxes, long long r2, Predicate pred, unsigned workers,
             std::uint64_t budget)
      : form_(form), boxes_(std::move(boxes)), r2_(r2), pred_(std::move(pred)), workers_(workers), budget_(budget) {
    const auto co = form.approx();
    k_ = {co[0], co[1], co[2], co[3]};
  }

  std::vector<Hit> run() {
    const long long r = isqrt_ll(r2_);
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < boxes_.size(); ++i) {
      const Box& b = boxes_[i];
      double lo = INFINITY, hi = -INFINITY;
      for (double X : {b.x0, b.x1}) {
        for (double Y : {b.y0, b.y1}) {
          const double x = k_.a * X - k_.c * Y;
          lo = std::min(lo, x);
          hi = std::max(hi, x);
        }
      }
      const long long x0 = std::max<long long>(-r, static_cast<long long>(std::floor(lo)) - 1);
      const long long x1 = std::min<long long>(r, static_cast<long long>(std::ceil(hi)) + 1);
      for (long long s = x0; s <= x1; s += kChunk) jobs.push_back({i, s, std::min(x1, s + kChunk - 1)});
    }

    std::vector<std::vector<Hit>> results(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t j = next.fetch_add(1);
        if (j >= jobs.size() || stop_.load()) return;
        results[j] = scan(jobs[j]);
      }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers_; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::vector<Hit> all;
    for (auto& v : results) std::move(v.begin(), v.end(), std::back_inserter(all));
    std::sort(all.begin(), all.end(), [](const Hit& u, const Hit& v) { return u.p < v.p; });
    all.erase(std::unique(all.begin(), all.end(), [](const Hit& u, const Hit& v) { return u.p == v.p; }), all.end());
    return all;
  }

  bool exhausted() const { return stop_.load(); }

 private:
  static constexpr long long kChunk = 1 << 16;

  std::vector<Hit> scan(const Job& job) {
    std::vector<Hit> out;
    const Box& b = boxes_[job.box];
    std::uint64_t examined = 0;
    for (long long x = job.x0; x <= job.x1; ++x) {
      const long long rest = r2_ - x * x;
      if (rest < 0) continue;
      const double yr = std::sqrt(static_cast<double>(rest));
      double ylo = -yr - 1, yhi = yr + 1;
      const auto xd = static_cast<double>(x);
      if (!constrain(k_.d, k_.c, b.x0, b.x1, xd, ylo, yhi)) continue;
      if (!constrain(k_.b, k_.a, b.y0, b.y1, xd, ylo, yhi)) continue;
      const long long ymax = isqrt_ll(rest);
      const long long y0 = std::max<long long>(-ymax, static_cast<long long>(std::ceil(ylo)) - 1);
      const long long y1 = std::min<long long>(ymax, static_cast<long long>(std::floor(yhi)) + 1);
      for (long long y = y0; y <= y1; ++y) {
        ++examined;
        if (!in_box(b, xd, static_cast<double>(y))) continue;
        if (gcd_ll(x, y) != 1) continue;
        const FormValue v = evaluate_form(form_, Integer(static_cast<long>(x)), Integer(static_cast<long>(y)));
        if (pred_(v.lminus, v.lplus, v.value)) out.push_back({{x, y}, x * x + y * y, v.lminus, v.lplus, v.value});
      }
      if (examined >= 4096) {
        if (charge(examined)) return out;
        examined = 0;
      }
    }
    charge(examined);
    return out;
  }

  bool in_box(const Box& b, double x, double y) const {
    const double X = k_.d * x + k_.c * y, Y = k_.b * x + k_.a * y;
    const double mx = 1e-9 * (std::abs(k_.d * x) + std::abs(k_.c * y) + 1);
    const double my = 1e-9 * (std::abs(k_.b * x) + std::abs(k_.a * y) + 1);
    return X >= b.x0 - mx && X <= b.x1 + mx && Y >= b.y0 - my && Y <= b.y1 + my;
  }

  // Adds to the shared candidate count; true once the budget is spent.
  bool charge(std::uint64_t n) {
    const std::uint64_t total = used_.fetch_add(n) + n;
    if (budget_ != 0 && total > budget_) stop_.store(true);
    return stop_.load();
  }

  const BinaryForm& form_;
  std::vector<Box> boxes_;
  long long r2_;
  Predicate pred_;
  unsigned workers_;
  std::uint64_t budget_;
  Coeffs k_{};
  std::atomic<std::uint64_t> used_{0};
  std::atomic<bool> stop_{false};
};

struct RegionSpec {
  std::vector<Box> boxes;
  Predicate pred;
};

RegionSpec region_for(const CountQuery& q, const BigRational& rho) {
  const auto co = q.form.approx();
  const double rd = mpq_get_d(rho.get_mpq_t()) * (1 + 1e-9) + 1;
  const double xmax = std::hypot(co[3], co[2]) * rd;  // |X| = |dx + cy|
  const double ymax = std::hypot(co[1], co[0]) * rd;  // |Y| = |bx + ay|
  const QuadraticSurd delta(q.delta);
  const QuadraticSurd half_sq(BigRational(q.delta * q.delta / 2));
  const QuadraticSurd kappa = q.effective_kappa();
  const double kd = kappa.to_double() * (1 - 1e-9) - 1e-12;

  RegionSpec r;
  auto clip = [&](bool on_x) {
    for (Box& b : r.boxes) {
      if (on_x) b.x0 = std::max(b.x0, kd);
      else b.y0 = std::max(b.y0, kd);
    }
    std::erase_if(r.boxes, [](const Box& b) { return b.x0 > b.x1 || b.y0 > b.y1; });
  };
  const double dd = mpq_get_d(q.delta.get_mpq_t());
  switch (q.kind) {
    case RegionKind::ThmMain:
      cover_quadrant(1, 1, dd, xmax, ymax, true, r.boxes);
      clip(true);
      r.pred = [delta, kappa](const QuadraticSurd& X, const QuadraticSurd&, const QuadraticSurd& Q) {
        return Q.sign() > 0 && compare(Q, delta) < 0 && compare(X, kappa) > 0;
      };
      break;
    case RegionKind::ThmReduced: {
      const double h = mpq_get_d(half_sq.rational_value().get_mpq_t());
      cover_quadrant(1, 1, h, xmax, ymax, true, r.boxes);
      cover_quadrant(1, -1, h, xmax, ymax, true, r.boxes);
      clip(true);
      r.pred = [half_sq, kappa](const QuadraticSurd& X, const QuadraticSurd&, const QuadraticSurd& Q) {
        return !Q.is_zero() && compare(Q.abs(), half_sq) < 0 && compare(X, kappa) > 0;
      };
      break;
    }
    case RegionKind::FullH:
      cover_quadrant(1, 1, dd, xmax, ymax, true, r.boxes);
      cover_quadrant(-1, -1, dd, xmax, ymax, true, r.boxes);
      r.pred = [delta](const QuadraticSurd&, const QuadraticSurd&, const QuadraticSurd& Q) {
        return Q.sign() > 0 && compare(Q, delta) < 0;
      };
      break;
    case RegionKind::Gprime:
      cover_quadrant(1, 1, dd, xmax, ymax, true, r.boxes);
      clip(false);
      r.pred = [delta, kappa](const QuadraticSurd&, const QuadraticSurd& Y, const QuadraticSurd& Q) {
        return Q.sign() > 0 && compare(Q, delta) < 0 && compare(Y, kappa) > 0;
      };
      break;
    case RegionKind::Wedge:
      cover_quadrant(1, 1, dd, xmax, ymax, false, r.boxes);
      r.pred = [delta](const QuadraticSurd& X, const QuadraticSurd& Y, const QuadraticSurd& Q) {
        return Q.sign() > 0 && compare(Q, delta) < 0 && Y.sign() > 0 && compare(Y, X) < 0;
      };
      break;
  }
  return r;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

CountResult tally(const CountQuery& q, const std::vector<Hit>& hits, long long r2, double wall) {
  CountResult res;
  res.query = q;
  res.wall_seconds = wall;
  std::vector<Witness> kept;
  SplitCheck split;
  const QuadraticSurd kappa = q.effective_kappa();
  for (const Hit& h : hits) {
    if (h.norm2 > r2) continue;
    ++res.count;
    if (q.keep_witnesses) kept.push_back({h.p, h.Q});
    if (q.kind == RegionKind::FullH) {
      if (compare(h.X, kappa) > 0) ++split.g;
      if (compare(h.Y, kappa) > 0) ++split.gprime;
    }
  }
  if (q.keep_witnesses) res.witnesses = std::move(kept);
  if (q.kind == RegionKind::FullH) {
    split.h = res.count;
    res.split = split;
  }
  return res;
}

}  // namespace

std::vector<CountResult> count_region_grid(const CountQuery& q, const std::vector<BigRational>& rhos) {
  if (rhos.empty()) return {};
  const BigRational rmax = *std::max_element(rhos.begin(), rhos.end());
  for (const BigRational& rho : rhos) {
    CountQuery one = q;
    one.rho = rho;
    one.validate();
  }
  const auto t0 = std::chrono::steady_clock::now();
  RegionSpec spec = region_for(q, rmax);
  Enumerator en(q.form, std::move(spec.boxes), norm_bound(rmax), std::move(spec.pred), q.workers, q.budget);
  const std::vector<Hit> hits = en.run();
  const double wall = seconds_since(t0);
  if (en.exhausted()) {
    CountQuery pq = q;
    pq.rho = rmax;
    throw BudgetExhausted("candidate budget exhausted", tally(pq, hits, norm_bound(rmax), wall));
  }
  std::vector<CountResult> out;
  for (const BigRational& rho : rhos) {
    CountQuery one = q;
    one.rho = rho;
    out.push_back(tally(one, hits, norm_bound(rho), wall));
  }
  return out;
}

CountResult count_region(const CountQuery& q) { return count_region_grid(q, {q.rho}).front(); }

CountResult count_region_bruteforce(const CountQuery& q) {
  q.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const RegionSpec spec = region_for(q, q.rho);
  const long long r2 = norm_bound(q.rho);
  const long long r = isqrt_ll(r2);
  std::vector<Hit> hits;
  for (long long x = -r; x <= r; ++x) {
    for (long long y = -r; y <= r; ++y) {
      if (x * x + y * y > r2 || gcd_ll(x, y) != 1) continue;
      const FormValue v = evaluate_form(q.form, Integer(static_cast<long>(x)), Integer(static_cast<long>(y)));
      if (spec.pred(v.lminus, v.lplus, v.value)) hits.push_back({{x, y}, x * x + y * y, v.lminus, v.lplus, v.value});
    }
  }
  return tally(q, hits, r2, seconds_since(t0));
}

std::vector<BigRational> geometric_grid(const BigRational& start, const BigRational& stop, const BigRational& multiplier) {
  if (start <= 0) throw std::domain_error("grid start must be positive");
  if (multiplier <= 1) throw std::domain_error("grid multiplier must exceed 1");
  std::vector<BigRational> out;
  for (BigRational r = start; r <= stop; r *= multiplier) out.push_back(r);
  return out;
}

CertifiedReal TimeInterval::start() const { return log(CertifiedReal::exact(exp_start)); }
CertifiedReal TimeInterval::end() const { return log(CertifiedReal::exact(exp_end)); }

std::optional<TimeInterval> interval_for_point(const BinaryForm& g, LatticePoint p, const QuadraticSurd& sigma_sq) {
  if (sigma_sq.sign() <= 0) throw std::domain_error("sigma must be positive");
  const FormValue v = evaluate_form(g, Integer(static_cast<long>(p.x)), Integer(static_cast<long>(p.y)));
  const QuadraticSurd& X = v.lminus;
  const QuadraticSurd& Y = v.lplus;
  if (X.sign() <= 0 || Y.sign() <= 0 || compare(v.value, sigma_sq) >= 0) return std::nullopt;
  TimeInterval ti{p, X, Y, X * X / sigma_sq, X / Y};
  if (compare(ti.exp_start, QuadraticSurd(1)) < 0) ti.exp_start = QuadraticSurd(1);
  if (compare(ti.exp_start, ti.exp_end) >= 0) return std::nullopt;
  return ti;
}

ComponentReport component_count(const BinaryForm& g, const QuadraticSurd& sigma_sq, const QuadraticSurd& tau_sq,
                                unsigned workers) {
  if (sigma_sq.sign() <= 0 || compare(tau_sq, sigma_sq) <= 0) throw std::domain_error("requires tau > sigma > 0");
  if (compare(sigma_sq, QuadraticSurd(1)) >= 0) throw std::domain_error("W(sigma) must have area below 1/2");

  const QuadraticSurd exp_window = tau_sq / sigma_sq;
  ComponentReport rep;
  rep.window = log(CertifiedReal::exact(exp_window));

  const auto co = g.approx();
  const double tau = std::sqrt(tau_sq.to_double()), sigma = std::sqrt(sigma_sq.to_double());
  const double gnorm = std::sqrt(co[0] * co[0] + co[1] * co[1] + co[2] * co[2] + co[3] * co[3]);
  const long long r = static_cast<long long>(std::ceil(gnorm * (tau + sigma) * (1 + 1e-9))) + 1;
  std::vector<Box> boxes;
  cover_quadrant(1, 1, sigma_sq.to_double(), tau * (1 + 1e-9), tau, false, boxes);
  Predicate pred = [&](const QuadraticSurd& X, const QuadraticSurd& Y, const QuadraticSurd& Q) {
    return X.sign() > 0 && Y.sign() > 0 && compare(Y, X) < 0 && compare(Q, sigma_sq) < 0 && compare(X * X, tau_sq) <= 0;
  };
  Enumerator en(g, std::move(boxes), r * r, pred, workers, 0);
  for (const Hit& h : en.run()) {
    TimeInterval ti{h.p, h.X, h.Y, h.X * h.X / sigma_sq, h.X / h.Y};
    if (compare(ti.exp_start, QuadraticSurd(1)) < 0) ti.exp_start = QuadraticSurd(1);
    rep.intervals.push_back(std::move(ti));
  }
  std::sort(rep.intervals.begin(), rep.intervals.end(), [](const TimeInterval& u, const TimeInterval& v) {
    const int c = compare(u.exp_start, v.exp_start);
    return c != 0 ? c < 0 : u.p < v.p;
  });

  // Sweep in e^t; [s, e) pieces touching at s = e still form one component.
  struct Run {
    QuadraticSurd s, e;
    std::vector<LatticePoint> pts;
  };
  std::vector<Run> runs;
  for (const TimeInterval& ti : rep.intervals) {
    QuadraticSurd e = compare(ti.exp_end, exp_window) < 0 ? ti.exp_end : exp_window;
    if (!runs.empty() && compare(ti.exp_start, runs.back().e) <= 0) {
      if (compare(e, runs.back().e) > 0) runs.back().e = e;
      runs.back().pts.push_back(ti.p);
    } else {
      runs.push_back({ti.exp_start, e, {ti.p}});
    }
  }

  auto cross = [](LatticePoint p, LatticePoint q) -> Integer {
    return Integer(static_cast<long>(p.x)) * Integer(static_cast<long>(q.y)) - Integer(static_cast<long>(p.y)) * Integer(static_cast<long>(q.x));
  };
  for (std::size_t i = 0; i < runs.size(); ++i) {
    for (std::size_t a = 0; a < runs[i].pts.size(); ++a) {
      for (std::size_t b = a + 1; b < runs[i].pts.size(); ++b) {
        if (cross(runs[i].pts[a], runs[i].pts[b]) != 0) {
          throw std::logic_error("independent lattice points share a component");
        }
      }
      for (std::size_t j = i + 1; j < runs.size(); ++j) {
        for (LatticePoint q : runs[j].pts) {
          if (cross(runs[i].pts[a], q) == 0) throw std::logic_error("dependent lattice points in distinct components");
        }
      }
    }
  }

  std::optional<QuadraticSurd> best;
  for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
    QuadraticSurd ratio = runs[i + 1].s / runs[i].e;
    if (!best || compare(ratio, *best) < 0) best = std::move(ratio);
  }
  if (best) rep.min_gap = log(CertifiedReal::exact(*best));
  for (Run& run : runs) {
    rep.components.push_back({log(CertifiedReal::exact(run.s)), log(CertifiedReal::exact(run.e)), std::move(run.pts)});
  }
  rep.count = rep.components.size();
  return rep;
}

GridScan grid_component_count(const BinaryForm& g, double sigma, double tau, double step) {
  if (!(tau > sigma && sigma > 0 && step > 0)) throw std::domain_error("requires tau > sigma > 0 and step > 0");
  const auto co = g.approx();
  const double a = co[0], b = co[1], c = co[2], d = co[3];
  const double T = 2 * std::log(tau / sigma);
  GridScan out;
  out.step = step;

  // Lattice point with 0 < e^{t/2} Y < e^{-t/2} X <= sigma, where X = dx + cy, Y = bx + ay.
  auto hit = [&](double t) {
    const double et = std::exp(t), eh = std::exp(t / 2);
    // Triangle vertices in the (x, y) plane: 0, g(e^{t/2} sigma, 0), g(e^{t/2} sigma, e^{-t/2} sigma).
    const double X1 = eh * sigma, Y2 = sigma / eh;
    const double vx[3] = {0, a * X1, a * X1 - c * Y2};
    const double vy[3] = {0, -b * X1, -b * X1 + d * Y2};
    const double xs = *std::max_element(vx, vx + 3) - *std::min_element(vx, vx + 3);
    const double ys = *std::max_element(vy, vy + 3) - *std::min_element(vy, vy + 3);
    const bool over_x = xs <= ys;
    const double* outer = over_x ? vx : vy;
    const long long lo = static_cast<long long>(std::floor(*std::min_element(outer, outer + 3))) - 1;
    const long long hi = static_cast<long long>(std::ceil(*std::max_element(outer, outer + 3))) + 1;
    // Constraints as alpha*x + beta*y in a range, per variable.
    struct Lin {
      double cx, cy, lo, hi;
    };
    const Lin cons[3] = {{d, c, -INFINITY, X1}, {b, a, 0, INFINITY}, {d - et * b, c - et * a, 0, INFINITY}};
    for (long long k = lo; k <= hi; ++k) {
      double vlo = -INFINITY, vhi = INFINITY;
      bool ok = true;
      for (const Lin& l : cons) {
        const double fixed = over_x ? l.cx * k : l.cy * k;
        const double coef = over_x ? l.cy : l.cx;
        if (coef == 0) {
          if (fixed < l.lo || fixed > l.hi) ok = false;
          continue;
        }
        double u = (l.lo - fixed) / coef, v = (l.hi - fixed) / coef;
        if (coef < 0) std::swap(u, v);
        vlo = std::max(vlo, u);
        vhi = std::min(vhi, v);
      }
      if (!ok || vlo > vhi) continue;
      for (auto m = static_cast<long long>(std::ceil(vlo)); m <= static_cast<long long>(std::floor(vhi)); ++m) {
        const double x = over_x ? static_cast<double>(k) : static_cast<double>(m);
        const double y = over_x ? static_cast<double>(m) : static_cast<double>(k);
        const double X = d * x + c * y, Y = b * x + a * y;
        if (Y > 0 && X <= X1 && et * Y < X) return true;
      }
    }
    return false;
  };

  const auto n = static_cast<long long>(std::floor(T / step));
  bool in_run = false;
  for (long long k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) * step;
    if (hit(t)) {
      if (!in_run) out.runs.push_back({t, t});
      out.runs.back().second = t;
      in_run = true;
    } else {
      in_run = false;
    }
  }
  out.count = out.runs.size();
  return out;
}

bool grid_agrees(const ComponentReport& exact, const GridScan& grid) {
  if (exact.count == grid.count) return true;
  const double tol = 2 * grid.step;
  const double window = exact.window.approx();
  for (std::size_t i = 0; i < exact.components.size(); ++i) {
    const double s = exact.components[i].start.approx(), e = exact.components[i].end.approx();
    if (e - s < tol || window - s < tol) return true;
    if (i + 1 < exact.components.size() && exact.components[i + 1].start.approx() - e < tol) return true;
  }
  return false;
}

CertifiedReal separation_gap(const QuadraticSurd& sigma_sq) {
  if (sigma_sq.sign() <= 0 || compare(sigma_sq, QuadraticSurd(1)) >= 0) {
    throw std::domain_error("separation_gap requires area sigma^2/2 in (0, 1/2)");
  }
  return -log(CertifiedReal::exact(sigma_sq)) / CertifiedReal(2);
}

QuadraticSurd ge1_norm_sq(const BinaryForm& g) { return g.a() * g.a() + g.b() * g.b(); }

PointComponentReport compare_points_components(const BinaryForm& g, const BigRational& eps, const std::vector<BigRational>& rhos,
                              unsigned workers) {
  if (eps <= 0 || eps >= 1) throw std::domain_error("the point-count comparison requires 0 < eps < 1");
  PointComponentReport rep;
  rep.eps = eps;
  CountQuery q;
  q.form = g;
  q.delta = eps;
  q.kind = RegionKind::Wedge;
  q.workers = workers;
  const auto f = count_region_grid(q, rhos);
  const QuadraticSurd sigma_sq(eps);
  const QuadraticSurd norm = ge1_norm_sq(g);
  for (std::size_t i = 0; i < rhos.size(); ++i) {
    const QuadraticSurd tau_sq = QuadraticSurd(BigRational(rhos[i] * rhos[i])) / norm;
    std::size_t n = 0;
    if (compare(tau_sq, sigma_sq) > 0) n = component_count(g, sigma_sq, tau_sq, workers).count;
    rep.rows.push_back({rhos[i], f[i].count, n});
  }
  std::vector<std::size_t> order(rhos.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return rhos[i] < rhos[j]; });
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const long long diff = rep.rows[*it].diff();
    if (diff < -1 || diff > 1) break;
    rep.threshold = rhos[*it];
  }
  return rep;
}

}  // namespace hforms
