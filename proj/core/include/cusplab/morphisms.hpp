#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cusplab/boundary_proxy.hpp"
#include "cusplab/cusped_space.hpp"
#include "cusplab/presentation.hpp"

namespace cusplab {

// Source peripheral `src` maps into conjugator * h_dst^power * conjugator^-1.
struct PeripheralMatch {
  std::size_t src = 0;
  std::size_t dst = 0;
  long power = 1;
  Word conjugator;
};

// Homomorphism between free groups given by generator images, optionally
// followed by a left translation.
class GeneratorMap {
 public:
  GeneratorMap(Presentation source, Presentation target, std::vector<Word> images,
               std::vector<PeripheralMatch> matches, Word translation = {});

  static GeneratorMap identity(Presentation const& p);
  static GeneratorMap from_json(nlohmann::json const& j, Presentation const& source,
                                Presentation const& target);
  static GeneratorMap load(std::string const& path, Presentation const& source,
                           Presentation const& target);
  [[nodiscard]] nlohmann::json to_json() const;

  [[nodiscard]] Presentation const& source() const { return source_; }
  [[nodiscard]] Presentation const& target() const { return target_; }
  [[nodiscard]] std::vector<Word> const& images() const { return images_; }
  [[nodiscard]] std::vector<PeripheralMatch> const& matches() const { return matches_; }
  [[nodiscard]] Word const& translation() const { return translation_; }
  [[nodiscard]] PeripheralMatch const& match_for(std::size_t src) const;

  // Homomorphic image without the translation.
  [[nodiscard]] Word image(Word const& w) const;
  [[nodiscard]] GeneratorMap translated(Word const& g) const;

 private:
  Presentation source_;
  Presentation target_;
  std::vector<Word> images_;
  std::vector<PeripheralMatch> matches_;
  Word translation_;
};

Word apply(GeneratorMap const& map, Word const& w);
// f after g.
GeneratorMap compose(GeneratorMap const& f, GeneratorMap const& g);
// a -> a, b -> b a^power on F(a,b) with peripheral <aba^-1b^-1>.
GeneratorMap dehn_twist_map(Presentation const& p, long power = 1);

// Image coset of a source coset under the algebraic correspondence.
CosetId matched_coset(GeneratorMap const& map, CosetId const& c, std::size_t target_radius);

struct CuspPreservationReport {
  std::vector<std::size_t> per_coset;  // indexed by source horoball
  std::size_t k_hat = 0;
};

CuspPreservationReport cusp_preservation_report(GeneratorMap const& map, CuspedSpace const& X,
                                                CuspedSpace const& Y);

// Word-metric distance from w to the coset g<h> of peripheral p.
std::size_t distance_to_coset(Presentation const& p, Word const& w, Word const& g,
                              std::size_t peripheral);

struct InducedProxy {
  BoundaryProxy proxy;
  bool short_image = false;  // the conical image did not reach the target sphere
};

InducedProxy induced_proxy_map(GeneratorMap const& map, CuspedSpace const& X,
                               CuspedSpace const& Y, BoundaryProxy const& p);

struct DistortionFit {
  double A = 0.0;
  double B = 0.0;
  std::size_t points = 0;
  double max_residual = 0.0;  // largest y - (A x + B); never positive
};

struct FitPoint {
  double x = 0.0;
  double y = 0.0;
};

// Least-squares slope clamped at 0, then the smallest intercept >= 0 that
// puts every point on or below the line.
DistortionFit fit_affine_envelope(std::vector<FitPoint> const& points);

struct DistortionOptions {
  std::size_t samples = 400;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  std::int64_t threshold = -1;  // proxy separation; negative selects the default
  double delta_hat_x = 0.0;
  double delta_hat_y = 0.0;
  std::size_t attempts_per_sample = 50;
};

struct DistortionSample {
  std::vector<std::string> source;  // proxies in the source space
  std::vector<std::string> image;   // their images
  double x = 0.0;
  double y = 0.0;
  double aux_x = 0.0;  // second estimator where one exists (relative cross-ratio r)
  double aux_y = 0.0;
};

struct DistortionResult {
  DistortionFit forward;   // y <= A x + B
  DistortionFit backward;  // x <= A y + B
  std::optional<DistortionFit> inverse;  // cloud sampled in the target, mapped back
  std::vector<DistortionSample> samples;
  std::size_t resamples = 0;
};

// |[a,b,c,d]| against |[fa,fb,fc,fd]| on separated conical quadruples.
DistortionResult qm_distortion_experiment(GeneratorMap const& map, CuspedSpace const& X,
                                          CuspedSpace const& Y, DistortionOptions const& options,
                                          GeneratorMap const* inverse = nullptr);
// Relative cross-ratio (center estimator) on triples (a, b, c), c parabolic.
DistortionResult relative_qm_experiment(GeneratorMap const& map, CuspedSpace const& X,
                                        CuspedSpace const& Y, DistortionOptions const& options,
                                        GeneratorMap const* inverse = nullptr);
// Word distance between exit points of two pairs (parabolic, conical).
DistortionResult exit_distortion_experiment(GeneratorMap const& map, CuspedSpace const& X,
                                            CuspedSpace const& Y, DistortionOptions const& options,
                                            GeneratorMap const* inverse = nullptr);

enum class ReconstructionMode { centers, exits };

struct ReconstructionOptions {
  ReconstructionMode mode = ReconstructionMode::centers;
  double delta_hat_x = 0.0;
  double delta_hat_y = 0.0;
  std::size_t interior_radius = 0;  // 0 selects floor(R / 2)
  double coverage_cap = -1.0;       // negative disables the coverage check
  std::size_t jobs = 1;
};

struct ReconstructedVertex {
  Word x;
  Word phi_x;       // reconstructed image
  Word expected;    // apply(map, x)
  std::size_t error = 0;        // word distance between the two
  std::int32_t anchor_distance = 0;  // distance in X^h from x to the chosen center or exit; -1 if none
  bool flagged = false;              // chosen tuple has a short image or a suspect pair in Y, or no tuple is usable
};

struct ReconstructionReport {
  ReconstructionMode mode = ReconstructionMode::centers;
  std::vector<ReconstructedVertex> vertices;
  std::size_t d_hat = 0;      // max error
  double mean_error = 0.0;
  std::int32_t r_hat = 0;     // max anchor distance
  double lambda_hat = 0.0;
  double epsilon_hat = 0.0;
  DistortionFit forward;
  DistortionFit backward;
  std::size_t k_hat = 0;      // cusp preservation of the reconstructed map
  std::size_t flagged = 0;  // vertices left out of every statistic above
};

ReconstructionReport reconstruct_qi(GeneratorMap const& map, CuspedSpace const& X,
                                    CuspedSpace const& Y, ReconstructionOptions const& options);

std::string to_string(ReconstructionMode mode);
ReconstructionMode parse_reconstruction_mode(std::string const& s);

}  // namespace cusplab
