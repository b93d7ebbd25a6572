#include "cusplab/presentation.hpp"

#include <fstream>
#include <numeric>

#include <nlohmann/json.hpp>

#include "cusplab/error.hpp"

namespace cusplab {

CyclicForm cyclic_form(Word const& h) {
  if (h.empty()) fail(ErrorKind::invalid_argument, "cyclic form of the identity");
  std::size_t t = 0;
  std::size_t n = h.size();
  while (2 * t + 1 < n && h[t] == h[n - 1 - t].inv()) ++t;
  CyclicForm out;
  out.conjugator = h.prefix(t);
  std::vector<Generator> core(h.begin() + static_cast<std::ptrdiff_t>(t),
                              h.end() - static_cast<std::ptrdiff_t>(t));
  out.core = reduce(core);
  return out;
}

std::pair<Word, long> primitive_root(Word const& w) {
  auto [t, c] = cyclic_form(w);
  std::size_t n = c.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = c[i] == c[i - p];
    if (periodic) {
      Word root = multiply(multiply(t, c.prefix(p)), t.inverse());
      return {root, static_cast<long>(n / p)};
    }
  }
  return {w, 1};
}

std::optional<long> power_exponent(Word const& w, Word const& h) {
  if (w.empty()) return 0L;
  auto [t, c] = cyclic_form(h);
  // |h^k| = 2|t| + |k||c| for k != 0.
  if (w.size() < 2 * t.size() + c.size()) return std::nullopt;
  std::size_t rest = w.size() - 2 * t.size();
  if (rest % c.size() != 0) return std::nullopt;
  long k = static_cast<long>(rest / c.size());
  for (long candidate : {k, -k}) {
    if (power(h, candidate) == w) return candidate;
  }
  return std::nullopt;
}

namespace {

Word cyclic_generator(std::vector<Word> const& gens, std::size_t index) {
  if (gens.empty()) {
    fail(ErrorKind::unsupported_peripheral, "peripheral " + std::to_string(index) + " is empty");
  }
  Word root;
  long g = 0;
  for (auto const& h : gens) {
    if (h.empty()) {
      fail(ErrorKind::unsupported_peripheral,
           "peripheral " + std::to_string(index) + " has a trivial generator");
    }
    auto [r, m] = primitive_root(h);
    if (root.empty()) {
      root = r;
    } else if (r != root) {
      if (r == root.inverse()) {
        m = -m;
      } else {
        fail(ErrorKind::unsupported_peripheral,
             "peripheral " + std::to_string(index) + " is not cyclic");
      }
    }
    g = std::gcd(g, m);
  }
  // Keep the supplied orientation when there is a single generator.
  if (gens.size() == 1) return gens.front();
  return power(root, g);
}

}  // namespace

Presentation::Presentation(std::size_t rank, std::vector<std::vector<Word>> peripherals)
    : rank_(rank) {
  if (rank == 0 || rank > 26) {
    fail(ErrorKind::invalid_argument, "rank must lie in [1, 26]");
  }
  for (std::size_t i = 0; i < peripherals.size(); ++i) {
    for (auto const& h : peripherals[i]) {
      for (auto g : h) {
        if (g.index() >= rank) {
          fail(ErrorKind::presentation_mismatch,
               "peripheral word " + h.str() + " uses a generator beyond rank " +
                   std::to_string(rank));
        }
      }
    }
    Peripheral p;
    p.generator = cyclic_generator(peripherals[i], i);
    p.generators = std::move(peripherals[i]);
    peripherals_.push_back(std::move(p));
  }
}

Presentation Presentation::free_group(std::size_t rank) { return Presentation(rank, {}); }

Presentation Presentation::from_json(nlohmann::json const& j) {
  try {
    auto rank = j.at("rank").get<std::size_t>();
    std::vector<std::vector<Word>> peripherals;
    if (j.contains("peripherals")) {
      for (auto const& entry : j.at("peripherals")) {
        std::vector<Word> gens;
        if (entry.is_string()) {
          gens.push_back(parse_word(entry.get<std::string>(), rank));
        } else {
          for (auto const& s : entry) gens.push_back(parse_word(s.get<std::string>(), rank));
        }
        peripherals.push_back(std::move(gens));
      }
    }
    return Presentation(rank, std::move(peripherals));
  } catch (nlohmann::json::exception const& e) {
    fail(ErrorKind::parse, std::string("presentation: ") + e.what());
  }
}

Presentation Presentation::load(std::string const& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::parse, "cannot open presentation file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (nlohmann::json::exception const& e) {
    fail(ErrorKind::parse, path + ": " + e.what());
  }
  return from_json(j);
}

nlohmann::json Presentation::to_json() const {
  nlohmann::json j;
  j["rank"] = rank_;
  j["peripherals"] = nlohmann::json::array();
  for (auto const& p : peripherals_) {
    if (p.generators.size() == 1) {
      j["peripherals"].push_back(p.generators.front().str());
    } else {
      auto list = nlohmann::json::array();
      for (auto const& h : p.generators) list.push_back(h.str());
      j["peripherals"].push_back(list);
    }
  }
  return j;
}

std::vector<std::vector<Word>> Presentation::peripheral_words() const {
  std::vector<std::vector<Word>> out;
  for (auto const& p : peripherals_) out.push_back(p.generators);
  return out;
}

std::optional<long> Presentation::coset_offset(Word const& g1, Word const& g2,
                                               std::size_t peripheral) const {
  return power_exponent(multiply(g1.inverse(), g2), peripheral_generator(peripheral));
}

std::string CosetId::str() const {
  return std::to_string(peripheral) + ":" + (representative.empty() ? "1" : representative.str());
}

CosetSlice coset_slice(Presentation const& p, Word const& g, std::size_t peripheral,
                       std::size_t radius) {
  Word const& h = p.peripheral_generator(peripheral);
  auto [t, c] = cyclic_form(h);
  // |g h^j| >= 2|t| + |j||c| - |g|, so larger |j| leave the ball.
  long bound = static_cast<long>((radius + g.size()) / c.size()) + 1;
  CosetSlice out;
  Word member = multiply(g, power(h, -bound));
  for (long j = -bound; j <= bound; ++j) {
    if (member.size() <= radius) {
      out.exponents.push_back(j);
      out.members.push_back(member);
    }
    member = multiply(member, h);
  }
  return out;
}

CosetId coset_id(Presentation const& p, Word const& g, std::size_t peripheral,
                 std::size_t radius) {
  if (peripheral >= p.peripherals().size()) {
    fail(ErrorKind::unsupported_peripheral, "no peripheral " + std::to_string(peripheral));
  }
  if (g.size() > radius) {
    fail(ErrorKind::invalid_argument, "element " + g.str() + " lies outside the ball");
  }
  auto slice = coset_slice(p, g, peripheral, radius);
  CosetId id{peripheral, g};
  for (auto const& m : slice.members) {
    if (m < id.representative) id.representative = m;
  }
  return id;
}

}  // namespace cusplab
