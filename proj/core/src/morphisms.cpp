#include "cusplab/morphisms.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include <nlohmann/json.hpp>

#include "cusplab/coarse_geometry.hpp"
#include "cusplab/error.hpp"
#include "cusplab/parallel.hpp"
#include "cusplab/random.hpp"

namespace cusplab {

GeneratorMap::GeneratorMap(Presentation source, Presentation target, std::vector<Word> images,
                           std::vector<PeripheralMatch> matches, Word translation)
    : source_(std::move(source)),
      target_(std::move(target)),
      images_(std::move(images)),
      matches_(std::move(matches)),
      translation_(std::move(translation)) {
  if (images_.size() != source_.rank()) {
    fail(ErrorKind::presentation_mismatch, "map needs " + std::to_string(source_.rank()) +
                                               " generator images, got " +
                                               std::to_string(images_.size()));
  }
  for (auto const& w : images_) {
    for (auto g : w) {
      if (g.index() >= target_.rank()) {
        fail(ErrorKind::presentation_mismatch, "image " + w.str() + " leaves the target rank");
      }
    }
  }
  for (auto const& m : matches_) {
    if (m.src >= source_.peripherals().size() || m.dst >= target_.peripherals().size()) {
      fail(ErrorKind::correspondence, "peripheral match refers to a missing peripheral");
    }
    Word lhs = image(source_.peripheral_generator(m.src));
    Word rhs = multiply(multiply(m.conjugator, power(target_.peripheral_generator(m.dst), m.power)),
                        m.conjugator.inverse());
    if (lhs != rhs) {
      fail(ErrorKind::correspondence, "image of peripheral " + std::to_string(m.src) + " is " +
                                          lhs.str() + ", expected " + rhs.str());
    }
  }
}

GeneratorMap GeneratorMap::identity(Presentation const& p) {
  std::vector<Word> images;
  for (std::size_t i = 0; i < p.rank(); ++i) {
    images.push_back(reduce({Generator(static_cast<std::uint8_t>(i), false)}));
  }
  std::vector<PeripheralMatch> matches;
  for (std::size_t i = 0; i < p.peripherals().size(); ++i) matches.push_back({i, i, 1, {}});
  return GeneratorMap(p, p, std::move(images), std::move(matches));
}

GeneratorMap GeneratorMap::from_json(nlohmann::json const& j, Presentation const& source,
                                     Presentation const& target) {
  try {
    std::vector<Word> images(source.rank());
    std::vector<bool> seen(source.rank(), false);
    for (auto const& [key, value] : j.at("images").items()) {
      if (key.size() != 1) fail(ErrorKind::parse, "image key must be one letter: " + key);
      auto g = Generator::from_char(key[0]);
      if (g.inverse() || g.index() >= source.rank()) {
        fail(ErrorKind::parse, "bad image key " + key);
      }
      images[g.index()] = target.parse(value.get<std::string>());
      seen[g.index()] = true;
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
      if (!seen[i]) {
        fail(ErrorKind::parse, std::string("missing image for ") +
                                   Generator(static_cast<std::uint8_t>(i), false).to_char());
      }
    }
    std::vector<PeripheralMatch> matches;
    if (j.contains("peripheral_match")) {
      for (auto const& m : j.at("peripheral_match")) {
        matches.push_back({m.at("src").get<std::size_t>(), m.at("dst").get<std::size_t>(),
                           m.value("power", 1L), target.parse(m.value("conjugator", ""))});
      }
    }
    Word translation = target.parse(j.value("translation", ""));
    return GeneratorMap(source, target, std::move(images), std::move(matches),
                        std::move(translation));
  } catch (nlohmann::json::exception const& e) {
    fail(ErrorKind::parse, std::string("generator map: ") + e.what());
  }
}

GeneratorMap GeneratorMap::load(std::string const& path, Presentation const& source,
                                Presentation const& target) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::parse, "cannot open map file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (nlohmann::json::exception const& e) {
    fail(ErrorKind::parse, path + ": " + e.what());
  }
  return from_json(j, source, target);
}

nlohmann::json GeneratorMap::to_json() const {
  nlohmann::json j;
  j["images"] = nlohmann::json::object();
  for (std::size_t i = 0; i < images_.size(); ++i) {
    j["images"][std::string(1, Generator(static_cast<std::uint8_t>(i), false).to_char())] =
        images_[i].str();
  }
  j["peripheral_match"] = nlohmann::json::array();
  for (auto const& m : matches_) {
    j["peripheral_match"].push_back(
        {{"src", m.src}, {"dst", m.dst}, {"power", m.power}, {"conjugator", m.conjugator.str()}});
  }
  if (!translation_.empty()) j["translation"] = translation_.str();
  return j;
}

PeripheralMatch const& GeneratorMap::match_for(std::size_t src) const {
  for (auto const& m : matches_) {
    if (m.src == src) return m;
  }
  fail(ErrorKind::correspondence, "no peripheral match for source peripheral " + std::to_string(src));
}

Word GeneratorMap::image(Word const& w) const {
  Word out;
  for (auto g : w) {
    Word const& img = images_[g.index()];
    out = multiply(out, g.inverse() ? img.inverse() : img);
  }
  return out;
}

GeneratorMap GeneratorMap::translated(Word const& g) const {
  return GeneratorMap(source_, target_, images_, matches_, multiply(g, translation_));
}

Word apply(GeneratorMap const& map, Word const& w) {
  return multiply(map.translation(), map.image(w));
}

GeneratorMap compose(GeneratorMap const& f, GeneratorMap const& g) {
  if (!(g.target() == f.source())) {
    fail(ErrorKind::presentation_mismatch, "composition of incompatible maps");
  }
  std::vector<Word> images;
  for (auto const& w : g.images()) images.push_back(f.image(w));
  std::vector<PeripheralMatch> matches;
  for (auto const& mg : g.matches()) {
    bool found = false;
    for (auto const& mf : f.matches()) {
      if (mf.src != mg.dst) continue;
      // f(c1 h^p1 c1^-1) = f(c1) c2 h'^(p1 p2) c2^-1 f(c1)^-1
      matches.push_back({mg.src, mf.dst, mg.power * mf.power,
                         multiply(f.image(mg.conjugator), mf.conjugator)});
      found = true;
      break;
    }
    if (!found) {
      fail(ErrorKind::correspondence, "composition loses peripheral " + std::to_string(mg.src));
    }
  }
  Word translation = multiply(f.translation(), f.image(g.translation()));
  return GeneratorMap(g.source(), f.target(), std::move(images), std::move(matches),
                      std::move(translation));
}

GeneratorMap dehn_twist_map(Presentation const& p, long power_of_a) {
  Word commutator = parse_word("abAB");
  if (p.rank() != 2 || p.peripherals().size() != 1 ||
      (p.peripheral_generator(0) != commutator &&
       p.peripheral_generator(0) != commutator.inverse())) {
    fail(ErrorKind::unsupported,
         "the Dehn twist map needs F(a,b) with the single peripheral <abAB>");
  }
  Word a = parse_word("a");
  Word b = parse_word("b");
  return GeneratorMap(p, p, {a, multiply(b, power(a, power_of_a))}, {{0, 0, 1, {}}});
}

CosetId matched_coset(GeneratorMap const& map, CosetId const& c, std::size_t target_radius) {
  auto const& m = map.match_for(c.peripheral);
  Word g = multiply(apply(map, c.representative), m.conjugator);
  auto slice = coset_slice(map.target(), g, m.dst, target_radius);
  if (slice.members.empty()) {
    fail(ErrorKind::correspondence,
         "image of coset " + c.str() + " misses the target ball");
  }
  return CosetId{m.dst, *std::min_element(slice.members.begin(), slice.members.end())};
}

std::size_t distance_to_coset(Presentation const& p, Word const& w, Word const& g,
                              std::size_t peripheral) {
  Word const& h = p.peripheral_generator(peripheral);
  auto core = cyclic_form(h).core.size();
  Word v = multiply(w.inverse(), g);
  // |v h^k| > |v| once |k| |core| exceeds 2|v|.
  long bound = static_cast<long>(2 * v.size() / core) + 2;
  std::size_t best = v.size();
  Word cur = multiply(v, power(h, -bound));
  for (long k = -bound; k <= bound; ++k) {
    best = std::min(best, cur.size());
    cur = multiply(cur, h);
  }
  return best;
}

CuspPreservationReport cusp_preservation_report(GeneratorMap const& map, CuspedSpace const& X,
                                                CuspedSpace const& Y) {
  if (!(map.source() == X.presentation()) || !(map.target() == Y.presentation())) {
    fail(ErrorKind::presentation_mismatch, "map does not match the spaces");
  }
  CuspPreservationReport report;
  for (auto const& h : X.horoballs()) {
    auto const& m = map.match_for(h.coset.peripheral);
    Word g = multiply(apply(map, h.coset.representative), m.conjugator);
    std::size_t worst = 0;
    for (VertexId x : h.base) {
      worst = std::max(worst, distance_to_coset(map.target(), apply(map, X.ball().word(x)), g, m.dst));
    }
    report.per_coset.push_back(worst);
    report.k_hat = std::max(report.k_hat, worst);
  }
  return report;
}

InducedProxy induced_proxy_map(GeneratorMap const& map, CuspedSpace const& X,
                               CuspedSpace const& Y, BoundaryProxy const& p) {
  (void)X;
  InducedProxy out;
  if (p.parabolic()) {
    out.proxy = parabolic_proxy(Y, matched_coset(map, p.coset, Y.radius()));
    return out;
  }
  Word u = apply(map, p.word);
  if (u.size() >= Y.radius()) {
    out.proxy = conical_proxy(Y, u.prefix(Y.radius()));
    return out;
  }
  out.short_image = true;
  if (u.empty()) fail(ErrorKind::extension, "image of " + p.str() + " is trivial");
  Generator last = u.letters().back();
  while (u.size() < Y.radius()) u.push(last);
  out.proxy = conical_proxy(Y, u);
  return out;
}

DistortionFit fit_affine_envelope(std::vector<FitPoint> const& points) {
  if (points.empty()) fail(ErrorKind::invalid_argument, "envelope fit of an empty cloud");
  double n = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  for (auto const& p : points) {
    mx += p.x;
    my += p.y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (auto const& p : points) {
    sxx += (p.x - mx) * (p.x - mx);
    sxy += (p.x - mx) * (p.y - my);
  }
  DistortionFit fit;
  fit.points = points.size();
  fit.A = sxx > 0.0 ? std::max(0.0, sxy / sxx) : 0.0;
  double B = 0.0;
  for (auto const& p : points) B = std::max(B, p.y - fit.A * p.x);
  // Rounding in A*x can leave a point a hair above the line.
  for (auto const& p : points) {
    while (p.y > fit.A * p.x + B) B = std::nextafter(B, std::numeric_limits<double>::infinity());
  }
  fit.B = B;
  fit.max_residual = -std::numeric_limits<double>::infinity();
  for (auto const& p : points) fit.max_residual = std::max(fit.max_residual, p.y - (fit.A * p.x + fit.B));
  return fit;
}

namespace {

using Evaluator = std::function<std::optional<DistortionSample>(
    GeneratorMap const&, CuspedSpace const&, CuspedSpace const&, DistanceOracle&, DistanceOracle&,
    DistortionOptions const&, Rng&, bool&)>;

struct Cloud {
  std::vector<DistortionSample> samples;
  std::size_t resamples = 0;
};

Cloud gather(GeneratorMap const& map, CuspedSpace const& X, CuspedSpace const& Y,
             DistortionOptions const& options, Evaluator const& evaluate) {
  if (options.samples == 0) fail(ErrorKind::invalid_argument, "distortion experiment needs samples >= 1");
  std::size_t n = options.samples;
  std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, n));
  std::vector<std::unique_ptr<DistanceOracle>> ox, oy;
  for (std::size_t w = 0; w < jobs; ++w) {
    ox.push_back(std::make_unique<DistanceOracle>(X));
    oy.push_back(std::make_unique<DistanceOracle>(Y));
  }
  std::vector<std::optional<DistortionSample>> results(n);
  std::vector<std::size_t> resamples(n, 0);
  parallel_for(n, jobs, [&](std::size_t i, std::size_t worker) {
    Rng rng(options.seed, i);
    for (std::size_t attempt = 0; attempt < options.attempts_per_sample; ++attempt) {
      ox[worker]->clear();
      oy[worker]->clear();
      bool resampled = false;
      auto s = evaluate(map, X, Y, *ox[worker], *oy[worker], options, rng, resampled);
      if (s) {
        results[i] = std::move(s);
        break;
      }
      if (resampled) ++resamples[i];
    }
    ox[worker]->clear();
    oy[worker]->clear();
  });
  Cloud cloud;
  for (std::size_t i = 0; i < n; ++i) {
    cloud.resamples += resamples[i];
    if (results[i]) cloud.samples.push_back(std::move(*results[i]));
  }
  if (cloud.samples.size() < n) {
    fail(ErrorKind::sampling_starved, "distortion experiment achieved " +
                                          std::to_string(cloud.samples.size()) + " of " +
                                          std::to_string(n) + " samples");
  }
  return cloud;
}

DistortionResult run(GeneratorMap const& map, CuspedSpace const& X, CuspedSpace const& Y,
                     DistortionOptions const& options, GeneratorMap const* inverse,
                     Evaluator const& evaluate) {
  auto cloud = gather(map, X, Y, options, evaluate);
  DistortionResult out;
  std::vector<FitPoint> fwd, bwd;
  for (auto const& s : cloud.samples) {
    fwd.push_back({s.x, s.y});
    bwd.push_back({s.y, s.x});
  }
  out.forward = fit_affine_envelope(fwd);
  out.backward = fit_affine_envelope(bwd);
  out.samples = std::move(cloud.samples);
  out.resamples = cloud.resamples;
  if (inverse != nullptr) {
    DistortionOptions back = options;
    std::swap(back.delta_hat_x, back.delta_hat_y);
    back.seed = mix_seed(options.seed, 0x1f);
    auto inv_cloud = gather(*inverse, Y, X, back, evaluate);
    std::vector<FitPoint> pts;
    for (auto const& s : inv_cloud.samples) pts.push_back({s.x, s.y});
    out.inverse = fit_affine_envelope(pts);
  }
  return out;
}

std::vector<std::string> names(std::vector<BoundaryProxy> const& ps) {
  std::vector<std::string> out;
  for (auto const& p : ps) out.push_back(p.str());
  return out;
}

// Samples proxies in X and maps them to Y. Empty when the sample must be
// redrawn (starved sampler, short image, coincident images).
std::optional<std::pair<std::vector<BoundaryProxy>, std::vector<BoundaryProxy>>> draw(
    GeneratorMap const& map, CuspedSpace const& X, CuspedSpace const& Y, DistanceOracle& ox,
    DistortionOptions const& options, Rng& rng, std::size_t count, std::size_t parabolic,
    bool& resampled) {
  ProxySampleOptions po;
  po.count = count;
  po.parabolic = parabolic;
  po.threshold = options.threshold;
  ProxySample sample;
  try {
    sample = sample_proxies(ox, po, rng);
  } catch (Error const& e) {
    if (e.kind() != ErrorKind::sampling_starved) throw;
    return std::nullopt;
  }
  std::vector<BoundaryProxy> images;
  for (auto const& p : sample.proxies) {
    InducedProxy ip;
    try {
      ip = induced_proxy_map(map, X, Y, p);
    } catch (Error const& e) {
      if (e.kind() != ErrorKind::correspondence && e.kind() != ErrorKind::extension) throw;
      resampled = true;
      return std::nullopt;
    }
    if (ip.short_image) {
      resampled = true;
      return std::nullopt;
    }
    for (auto const& q : images) {
      if (q.realization == ip.proxy.realization) {
        resampled = true;
        return std::nullopt;
      }
    }
    images.push_back(std::move(ip.proxy));
  }
  return std::make_pair(std::move(sample.proxies), std::move(images));
}

std::optional<DistortionSample> evaluate_qm(GeneratorMap const& map, CuspedSpace const& X,
                                            CuspedSpace const& Y, DistanceOracle& ox,
                                            DistanceOracle& oy, DistortionOptions const& options,
                                            Rng& rng, bool& resampled) {
  auto drawn = draw(map, X, Y, ox, options, rng, 4, 0, resampled);
  if (!drawn) return std::nullopt;
  auto const& [src, img] = *drawn;
  auto cr_x = cross_ratio(ox, src[0].realization, src[1].realization, src[2].realization,
                          src[3].realization);
  auto cr_y = cross_ratio(oy, img[0].realization, img[1].realization, img[2].realization,
                          img[3].realization);
  DistortionSample s;
  s.source = names(src);
  s.image = names(img);
  s.x = cr_x.value().abs().value();
  s.y = cr_y.value().abs().value();
  return s;
}

std::optional<DistortionSample> evaluate_relqm(GeneratorMap const& map, CuspedSpace const& X,
                                               CuspedSpace const& Y, DistanceOracle& ox,
                                               DistanceOracle& oy,
                                               DistortionOptions const& options, Rng& rng,
                                               bool& resampled) {
  auto drawn = draw(map, X, Y, ox, options, rng, 3, 1, resampled);
  if (!drawn) return std::nullopt;
  auto const& [src, img] = *drawn;
  auto outside = [](CuspedSpace const& cs, std::vector<BoundaryProxy> const& t) {
    return !cs.in_horoball(t[0].realization, t[2].horoball) &&
           !cs.in_horoball(t[1].realization, t[2].horoball);
  };
  if (!outside(X, src)) return std::nullopt;
  if (!outside(Y, img)) {
    resampled = true;
    return std::nullopt;
  }
  auto rx = relative_cross_ratio(ox, src[0].realization, src[1].realization, src[2].horoball,
                                 options.delta_hat_x);
  auto ry = relative_cross_ratio(oy, img[0].realization, img[1].realization, img[2].horoball,
                                 options.delta_hat_y);
  DistortionSample s;
  s.source = names(src);
  s.image = names(img);
  s.x = rx.center_estimate;
  s.y = ry.center_estimate;
  s.aux_x = rx.r_estimate.value().abs().value();
  s.aux_y = ry.r_estimate.value().abs().value();
  return s;
}

std::optional<DistortionSample> evaluate_exit(GeneratorMap const& map, CuspedSpace const& X,
                                              CuspedSpace const& Y, DistanceOracle& ox,
                                              DistanceOracle& oy, DistortionOptions const& options,
                                              Rng& rng, bool& resampled) {
  // Pairs (p1, c1) and (p2, c2) from a sample [c1, c2, p1, p2].
  auto drawn = draw(map, X, Y, ox, options, rng, 4, 2, resampled);
  if (!drawn) return std::nullopt;
  auto const& [src, img] = *drawn;
  auto exits = [](DistanceOracle& o, std::vector<BoundaryProxy> const& t) {
    VertexId e1 = exit_point(o, t[2].horoball, t[0].realization);
    VertexId e2 = exit_point(o, t[3].horoball, t[1].realization);
    return o.space().ball().word_distance(e1, e2);
  };
  DistortionSample s;
  s.source = names(src);
  s.image = names(img);
  s.x = static_cast<double>(exits(ox, src));
  s.y = static_cast<double>(exits(oy, img));
  return s;
}

}  // namespace

DistortionResult qm_distortion_experiment(GeneratorMap const& map, CuspedSpace const& X,
                                          CuspedSpace const& Y, DistortionOptions const& options,
                                          GeneratorMap const* inverse) {
  return run(map, X, Y, options, inverse, evaluate_qm);
}

DistortionResult relative_qm_experiment(GeneratorMap const& map, CuspedSpace const& X,
                                        CuspedSpace const& Y, DistortionOptions const& options,
                                        GeneratorMap const* inverse) {
  if (X.horoballs().empty() || Y.horoballs().empty()) {
    fail(ErrorKind::invalid_argument, "relative cross-ratios need a parabolic point");
  }
  return run(map, X, Y, options, inverse, evaluate_relqm);
}

DistortionResult exit_distortion_experiment(GeneratorMap const& map, CuspedSpace const& X,
                                            CuspedSpace const& Y, DistortionOptions const& options,
                                            GeneratorMap const* inverse) {
  if (X.horoballs().empty() || Y.horoballs().empty()) {
    fail(ErrorKind::invalid_argument, "exit points need a parabolic point");
  }
  return run(map, X, Y, options, inverse, evaluate_exit);
}

std::string to_string(ReconstructionMode mode) {
  return mode == ReconstructionMode::centers ? "centers" : "exits";
}

ReconstructionMode parse_reconstruction_mode(std::string const& s) {
  if (s == "centers") return ReconstructionMode::centers;
  if (s == "exits") return ReconstructionMode::exits;
  fail(ErrorKind::parse, "unknown reconstruction mode " + s);
}

namespace {

// Sphere word reached from x by repeatedly appending the letter g.
Word direction(Word x, Generator g, std::size_t radius) {
  while (x.size() < radius || (!x.empty() && x.letters().back() == g.inv())) x.push(g);
  return x;
}

struct Anchor {
  std::int32_t distance = std::numeric_limits<std::int32_t>::max();
  std::vector<BoundaryProxy> tuple;
};

}  // namespace

ReconstructionReport reconstruct_qi(GeneratorMap const& map, CuspedSpace const& X,
                                    CuspedSpace const& Y, ReconstructionOptions const& options) {
  if (!(map.source() == X.presentation()) || !(map.target() == Y.presentation())) {
    fail(ErrorKind::presentation_mismatch, "map does not match the spaces");
  }
  if (options.mode == ReconstructionMode::exits && X.horoballs().empty()) {
    fail(ErrorKind::invalid_argument, "exit reconstruction needs a parabolic point");
  }
  std::size_t interior = options.interior_radius == 0 ? X.radius() / 2 : options.interior_radius;
  std::vector<VertexId> xs;
  for (VertexId v = 0; v < X.ball().size() && X.ball().length(v) <= interior; ++v) xs.push_back(v);

  std::size_t letters = 2 * X.presentation().rank();
  std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, xs.size()));
  std::vector<std::unique_ptr<DistanceOracle>> ox, oy;
  for (std::size_t w = 0; w < jobs; ++w) {
    ox.push_back(std::make_unique<DistanceOracle>(X));
    oy.push_back(std::make_unique<DistanceOracle>(Y));
  }
  std::vector<ReconstructedVertex> out(xs.size());
  std::vector<std::size_t> shorts(xs.size(), 0);

  parallel_for(xs.size(), jobs, [&](std::size_t i, std::size_t worker) {
    DistanceOracle& o = *ox[worker];
    DistanceOracle& q = *oy[worker];
    o.clear();
    q.clear();
    VertexId x = xs[i];
    Word const& xw = X.ball().word(x);
    std::vector<BoundaryProxy> dirs;
    for (std::size_t code = 0; code < letters; ++code) {
      dirs.push_back(conical_proxy(X, direction(xw, Generator::from_code(code), X.radius())));
    }
    auto const& dx = o.from(x);
    std::vector<Anchor> anchors;
    if (options.mode == ReconstructionMode::centers) {
      for (std::size_t a = 0; a < letters; ++a) {
        for (std::size_t b = a + 1; b < letters; ++b) {
          for (std::size_t c = b + 1; c < letters; ++c) {
            auto qc = quasi_projection(o, dirs[a].realization, dirs[b].realization,
                                       dirs[c].realization, options.delta_hat_x);
            anchors.push_back({dx[qc.vertex], {dirs[a], dirs[b], dirs[c]}});
          }
        }
      }
    } else {
      for (std::size_t p = 0; p < X.presentation().peripherals().size(); ++p) {
        auto cusp = parabolic_proxy(X, X.horoball_of(x, p));
        for (auto const& d : dirs) {
          anchors.push_back({dx[exit_point(o, cusp.horoball, d.realization)], {cusp, d}});
        }
      }
    }
    std::stable_sort(anchors.begin(), anchors.end(),
                     [](Anchor const& l, Anchor const& r) { return l.distance < r.distance; });
    // Nearest anchor whose image tuple is non-degenerate in Y, preferring
    // tuples without short images. A vertex with only short or degenerate
    // images is flagged.
    std::optional<Anchor> best;
    VertexId phi = 0;
    bool flagged = true;
    for (int pass = 0; pass < 2 && !best; ++pass) {
      for (auto const& anchor : anchors) {
        if (options.coverage_cap >= 0.0 && anchor.distance > options.coverage_cap) break;
        std::vector<BoundaryProxy> images;
        bool short_image = false;
        for (auto const& p : anchor.tuple) {
          auto ip = induced_proxy_map(map, X, Y, p);
          short_image = short_image || ip.short_image;
          images.push_back(std::move(ip.proxy));
        }
        if (pass == 0 && short_image) continue;
        bool suspect = false;
        auto check = [&](VertexId u, VertexId v) {
          suspect = suspect || Y.suspect(u, v, q.from(u), q.from(v));
        };
        if (options.mode == ReconstructionMode::centers) {
          auto r0 = images[0].realization, r1 = images[1].realization, r2 = images[2].realization;
          if (r0 == r1 || r1 == r2 || r0 == r2) continue;
          check(r0, r1);
          check(r1, r2);
          check(r0, r2);
          if (pass == 0 && suspect) continue;
          phi = quasi_projection(q, r0, r1, r2, options.delta_hat_y).vertex;
        } else {
          // Paths from a deep vertex always meet the depth frontier, so the
          // exit pair carries no suspect check.
          phi = exit_point(q, images[0].horoball, images[1].realization);
        }
        best = anchor;
        flagged = short_image || suspect;
        break;
      }
    }
    if (!best && options.coverage_cap >= 0.0) {
      fail(ErrorKind::coverage_gap, "no usable anchor within " + std::to_string(options.coverage_cap) +
                                        " of " + (xw.empty() ? std::string("1") : xw.str()));
    }
    shorts[i] = flagged ? 1 : 0;
    ReconstructedVertex r;
    r.x = xw;
    r.phi_x = best ? Y.word(phi) : Word{};
    r.expected = apply(map, xw);
    r.error = multiply(r.phi_x.inverse(), r.expected).size();
    r.anchor_distance = best ? best->distance : -1;
    r.flagged = flagged;
    out[i] = std::move(r);
    o.clear();
    q.clear();
  });

  ReconstructionReport report;
  report.mode = options.mode;
  double total = 0.0;
  std::size_t counted = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    report.flagged += shorts[i];
    if (out[i].flagged) continue;
    ++counted;
    report.d_hat = std::max(report.d_hat, out[i].error);
    report.r_hat = std::max(report.r_hat, out[i].anchor_distance);
    total += static_cast<double>(out[i].error);
  }
  report.mean_error = counted == 0 ? 0.0 : total / static_cast<double>(counted);

  std::vector<FitPoint> fwd, bwd;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].flagged) continue;
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      if (out[j].flagged) continue;
      auto dx = static_cast<double>(multiply(out[i].x.inverse(), out[j].x).size());
      auto dy = static_cast<double>(multiply(out[i].phi_x.inverse(), out[j].phi_x).size());
      fwd.push_back({dx, dy});
      bwd.push_back({dy, dx});
    }
  }
  if (!fwd.empty()) {
    report.forward = fit_affine_envelope(fwd);
    report.backward = fit_affine_envelope(bwd);
    report.lambda_hat = std::max(report.forward.A, report.backward.A);
    report.epsilon_hat = std::max(report.forward.B, report.backward.B);
  }

  // Cusp preservation of the reconstructed map on interior coset members.
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].flagged) continue;
    for (std::size_t p = 0; p < X.presentation().peripherals().size(); ++p) {
      auto const& h = X.horoballs()[X.horoball_of(xs[i], p)];
      auto const& m = map.match_for(p);
      Word g = multiply(apply(map, h.coset.representative), m.conjugator);
      report.k_hat = std::max(report.k_hat, distance_to_coset(Y.presentation(), out[i].phi_x, g, m.dst));
    }
  }
  report.vertices = std::move(out);
  return report;
}

}  // namespace cusplab
