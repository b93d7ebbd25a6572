#include "cusplab/boundary_proxy.hpp"

#include <algorithm>
#include <cmath>

#include "cusplab/error.hpp"

namespace cusplab {

std::string BoundaryProxy::str() const {
  if (parabolic()) return "p:" + coset.str();
  return "c:" + word.str();
}

BoundaryProxy conical_proxy(CuspedSpace const& cs, Word const& sphere_word) {
  if (sphere_word.size() != cs.radius()) {
    fail(ErrorKind::invalid_proxy, "conical proxy " + sphere_word.str() + " is not on the sphere");
  }
  BoundaryProxy p;
  p.kind = BoundaryProxy::Kind::conical;
  p.word = sphere_word;
  p.realization = cs.vertex(sphere_word);
  return p;
}

BoundaryProxy parabolic_proxy(CuspedSpace const& cs, std::size_t horoball) {
  auto const& h = cs.horoballs().at(horoball);
  BoundaryProxy p;
  p.kind = BoundaryProxy::Kind::parabolic;
  p.word = h.coset.representative;
  p.coset = h.coset;
  p.horoball = horoball;
  p.realization = cs.deep_vertex(horoball);
  return p;
}

BoundaryProxy parabolic_proxy(CuspedSpace const& cs, CosetId const& coset) {
  auto h = cs.find_horoball(coset);
  if (!h) fail(ErrorKind::invalid_proxy, "no horoball for coset " + coset.str());
  return parabolic_proxy(cs, *h);
}

BoundaryProxy parse_proxy(CuspedSpace const& cs, std::string const& text) {
  auto const& p = cs.presentation();
  if (text.rfind("c:", 0) == 0) return conical_proxy(cs, p.parse(text.substr(2)));
  if (text.rfind("p:", 0) == 0) {
    auto colon = text.find(':', 2);
    if (colon == std::string::npos) fail(ErrorKind::parse, "bad parabolic proxy " + text);
    std::size_t index = 0;
    try {
      index = std::stoul(text.substr(2, colon - 2));
    } catch (std::exception const&) {
      fail(ErrorKind::parse, "bad peripheral index in " + text);
    }
    Word rep = p.parse(text.substr(colon + 1));
    return parabolic_proxy(cs, coset_id(p, rep, index, cs.radius()));
  }
  fail(ErrorKind::parse, "proxy must start with c: or p:, got " + text);
}

std::int64_t default_separation(std::size_t radius) {
  return static_cast<std::int64_t>(radius / 3);
}

ProxySample sample_proxies(DistanceOracle& oracle, ProxySampleOptions const& options, Rng& rng) {
  auto const& cs = oracle.space();
  ProxySample sample;
  sample.threshold = options.threshold < 0 ? default_separation(cs.radius()) : options.threshold;
  if (options.count == 0) return sample;
  if (options.parabolic > options.count) {
    fail(ErrorKind::invalid_argument, "more parabolic proxies than proxies requested");
  }
  std::size_t parabolic_radius =
      options.parabolic_radius == 0 ? cs.radius() / 2 : options.parabolic_radius;
  std::vector<std::size_t> cusps;
  if (options.parabolic > 0) {
    for (std::size_t h = 0; h < cs.horoballs().size(); ++h) {
      if (cs.horoballs()[h].coset.representative.size() <= parabolic_radius) cusps.push_back(h);
    }
    if (cusps.empty()) fail(ErrorKind::sampling_starved, "no cosets within the parabolic radius");
  }
  auto const& sphere = cs.ball().sphere();
  std::size_t conical = options.count - options.parabolic;
  std::size_t attempts = 0;
  while (sample.proxies.size() < options.count) {
    if (++attempts > options.max_attempts) {
      fail(ErrorKind::sampling_starved, "sampled " + std::to_string(sample.proxies.size()) +
                                            " of " + std::to_string(options.count) +
                                            " proxies under threshold " +
                                            std::to_string(sample.threshold));
    }
    BoundaryProxy candidate = sample.proxies.size() < conical
                                  ? conical_proxy(cs, cs.word(rng.pick(sphere)))
                                  : parabolic_proxy(cs, rng.pick(cusps));
    bool ok = true;
    std::vector<HalfInt> row;
    for (auto const& q : sample.proxies) {
      if (q.realization == candidate.realization) {
        ok = false;
        break;
      }
      // Only arrays rooted at the identity and at accepted proxies are
      // computed, so rejected candidates cost no BFS.
      VertexId c = candidate.realization;
      auto gp = HalfInt::from_twice(oracle.from(0)[c] + oracle.from(0)[q.realization] -
                                    oracle.from(q.realization)[c]);
      if (gp.twice() > 2 * sample.threshold) {
        ok = false;
        break;
      }
      row.push_back(gp);
    }
    if (!ok) continue;
    for (std::size_t i = 0; i < row.size(); ++i) sample.products[i].push_back(row[i]);
    row.push_back(HalfInt{});
    sample.products.push_back(row);
    sample.proxies.push_back(std::move(candidate));
  }
  return sample;
}

ProxySample sample_proxies(CuspedSpace const& cs, ProxySampleOptions const& options,
                           std::uint64_t seed) {
  DistanceOracle oracle(cs);
  Rng rng(seed);
  return sample_proxies(oracle, options, rng);
}

std::span<VertexId const> ProxyPath::trimmed() const {
  return std::span(path).subspan(trim, path.size() - 2 * trim);
}

ProxyPath proxy_geodesic(DistanceOracle& oracle, BoundaryProxy const& p, BoundaryProxy const& q,
                         double delta_hat) {
  if (p.realization == q.realization || (p.parabolic() && q.parabolic() && p.coset == q.coset)) {
    fail(ErrorKind::degenerate_pair, "proxy geodesic from " + p.str() + " to itself");
  }
  ProxyPath out;
  out.path = oracle.side(p.realization, q.realization);
  auto trim = static_cast<std::size_t>(std::floor(delta_hat));
  out.trim = std::min(trim, (out.path.size() - 1) / 2);
  return out;
}

BoundaryProxy extend_proxy(CuspedSpace const& larger, BoundaryProxy const& p) {
  if (p.parabolic()) {
    auto h = larger.find_horoball(p.coset);
    if (!h) fail(ErrorKind::extension, "coset " + p.coset.str() + " is missing from the larger space");
    return parabolic_proxy(larger, *h);
  }
  if (p.word.empty()) fail(ErrorKind::extension, "cannot extend the empty word");
  if (p.word.size() > larger.radius()) {
    fail(ErrorKind::extension, "proxy " + p.str() + " is beyond the larger sphere");
  }
  Word w = p.word;
  Generator last = w.letters().back();
  while (w.size() < larger.radius()) w.push(last);
  return conical_proxy(larger, w);
}

DriftReport stabilization_check(CuspedSpace const& small, CuspedSpace const& large,
                                std::vector<std::vector<BoundaryProxy>> const& tuples,
                                ProxyQuantity const& quantity) {
  if (!(small.presentation() == large.presentation())) {
    fail(ErrorKind::invalid_argument, "stabilization check across different presentations");
  }
  if (small.radius() > large.radius()) {
    fail(ErrorKind::invalid_argument, "stabilization check needs the smaller space first");
  }
  DistanceOracle os(small);
  DistanceOracle ol(large);
  DriftReport report;
  double total = 0.0;
  for (auto const& tuple : tuples) {
    std::vector<BoundaryProxy> extended;
    for (auto const& p : tuple) extended.push_back(extend_proxy(large, p));
    os.clear();
    ol.clear();
    double a = quantity(os, tuple);
    double b = quantity(ol, extended);
    double drift = std::fabs(a - b);
    report.small_values.push_back(a);
    report.large_values.push_back(b);
    report.max_drift = std::max(report.max_drift, drift);
    total += drift;
    ++report.tuples;
  }
  report.mean_drift = report.tuples == 0 ? 0.0 : total / static_cast<double>(report.tuples);
  return report;
}

}  // namespace cusplab
