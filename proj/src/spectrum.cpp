#include "linkoid/spectrum.hpp"

#include <atomic>
#include <exception>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "linkoid/errors.hpp"

namespace linkoid {

Selector parse_selector(const std::string& name) {
  if (name == "jones") return Selector::Jones;
  if (name == "arrow") return Selector::Arrow;
  if (name == "affine") return Selector::Affine;
  if (name == "height_bound") return Selector::HeightBound;
  if (name == "genus_bound") return Selector::GenusBound;
  if (name == "component_count") return Selector::ComponentCount;
  if (name == "odd_writhe") return Selector::OddWrithe;
  throw UnsupportedSelector("unknown selector: " + name);
}

std::string selector_name(Selector f) {
  switch (f) {
    case Selector::Jones: return "jones";
    case Selector::Arrow: return "arrow";
    case Selector::Affine: return "affine";
    case Selector::HeightBound: return "height_bound";
    case Selector::GenusBound: return "genus_bound";
    case Selector::ComponentCount: return "component_count";
    case Selector::OddWrithe: return "odd_writhe";
  }
  throw UnsupportedSelector("unknown selector");
}

namespace {

std::string fingerprint_of(const InvariantReport& r) {
  return std::to_string(r.component_count) + " | " + r.jones.str() + " | " +
         r.arrow.str();
}

SpectrumEntry make_entry(const PlanarDiagram& d, const Involution& sigma,
                         const StateSumOptions& opts) {
  SpectrumEntry e;
  e.sigma = sigma;
  e.klass = {sigma};
  e.closure = virtual_closure(d, sigma);
  e.rep = report(d, sigma, opts);
  e.fingerprint = fingerprint_of(e.rep);
  return e;
}

}  // namespace

Spectrum virtual_spectrum(const PlanarDiagram& d, SpectrumMode mode,
                          const StateSumOptions& opts) {
  {
    std::vector<std::string> errs = d.validate();
    if (!errs.empty()) throw InvalidDiagram("spectrum: " + errs.front());
  }
  int n = d.endpoint_count() / 2;
  if (n > 6)
    throw TooLarge("spectrum over H_" + std::to_string(n) + " has " +
                   std::to_string(double_factorial_odd(2 * n - 1)) +
                   " closures; 6 strands max");
  std::vector<Involution> sigmas = enumerate_Hn(n);

  std::vector<SpectrumEntry> raw(sigmas.size());
  int threads = std::max(1, opts.threads);
  if (threads == 1 || sigmas.size() < 2) {
    for (size_t i = 0; i < sigmas.size(); ++i)
      raw[i] = make_entry(d, sigmas[i], opts);
  } else {
    // Entries land at their rank no matter which worker computes them, so
    // the result is independent of scheduling.
    StateSumOptions inner = opts;
    inner.threads = 1;
    std::atomic<size_t> next{0};
    std::vector<std::exception_ptr> errors(sigmas.size());
    std::vector<std::thread> pool;
    int workers = (int)std::min<size_t>(threads, sigmas.size());
    for (int t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (size_t i = next++; i < sigmas.size(); i = next++) {
          try {
            raw[i] = make_entry(d, sigmas[i], inner);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& err : errors)
      if (err) std::rethrow_exception(err);
  }

  Spectrum s;
  s.mode = mode;
  s.n = n;
  if (mode == SpectrumMode::Multiset) {
    s.entries = std::move(raw);
    return s;
  }
  std::map<std::string, size_t> seen;
  for (SpectrumEntry& e : raw) {
    auto [it, fresh] = seen.emplace(e.fingerprint, s.entries.size());
    if (fresh)
      s.entries.push_back(std::move(e));
    else
      s.entries[it->second].klass.push_back(e.sigma);
  }
  return s;
}

std::vector<SpectralValue> spectral_values(const Spectrum& s, Selector f) {
  std::vector<SpectralValue> out;
  out.reserve(s.entries.size());
  for (const SpectrumEntry& e : s.entries) {
    SpectralValue v;
    switch (f) {
      case Selector::Jones:
        v.text = e.rep.jones.str();
        break;
      case Selector::Arrow:
        v.text = e.rep.arrow.str();
        break;
      case Selector::Affine:
        throw UnsupportedSelector(
            "affine is undefined for multi-component closures; not a "
            "spectrum selector");
      case Selector::HeightBound:
        v.numeric = true;
        v.number = e.rep.height_bound;
        break;
      case Selector::GenusBound:
        v.numeric = true;
        v.number = e.rep.genus_bound;
        break;
      case Selector::ComponentCount:
        v.numeric = true;
        v.number = e.rep.component_count;
        break;
      case Selector::OddWrithe:
        v.numeric = true;
        if (e.rep.odd_writhe)
          v.number = e.rep.odd_writhe->value;
        else
          v.defined = false;
        break;
    }
    if (v.numeric) v.text = v.defined ? std::to_string(v.number) : "undefined";
    out.push_back(std::move(v));
  }
  return out;
}

SpectralMean avg_spectral(const Spectrum& s, Selector f) {
  SpectralMean m;
  m.selector = f;
  if (f == Selector::Jones) {
    std::vector<LaurentPoly> xs;
    for (const SpectrumEntry& e : s.entries) xs.push_back(e.rep.jones);
    m.poly = mean(xs);
    return m;
  }
  if (f == Selector::Arrow) {
    std::vector<ArrowPoly> xs;
    for (const SpectrumEntry& e : s.entries) xs.push_back(e.rep.arrow);
    m.arrow = mean(xs);
    return m;
  }
  m.numeric = true;
  std::vector<Rational> xs;
  for (const SpectralValue& v : spectral_values(s, f))
    if (v.defined) xs.push_back(Rational(v.number));
  m.value = mean(xs);
  return m;
}

std::string SpectralMean::str() const {
  if (selector == Selector::Jones) return poly.str();
  if (selector == Selector::Arrow) return arrow.str();
  return value.str();
}

long long min_spectral(const Spectrum& s, Selector f) {
  if (f == Selector::Jones || f == Selector::Arrow)
    throw UnsupportedSelector("min over " + selector_name(f) +
                              ": real-valued selectors only");
  bool any = false;
  long long best = 0;
  for (const SpectralValue& v : spectral_values(s, f)) {
    if (!v.defined) continue;
    if (!any || v.number < best) best = v.number;
    any = true;
  }
  if (!any) throw EmptyList("min over an empty spectrum");
  return best;
}

}  // namespace linkoid
