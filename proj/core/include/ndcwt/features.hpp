#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ndcwt/phase.hpp"
#include "ndcwt/spectra.hpp"

namespace ndcwt {

/// Everything the extraction pipeline needs to be reproducible.
struct TransformSettings {
    std::string wavelet = "cdaub6";
    int depth = 4;
    SpectrumMode mode = SpectrumMode::OneD;
    int shift = 0;  ///< diagonal shift, 2-D mode
    FitMethod fit = FitMethod::Ols;
    std::optional<std::pair<int, int>> fit_levels;  ///< default: all levels
    bool bridge = false;  ///< endpoint-bridge the input before transforming
};

/// Spectral slope plus per-level phase averages, coarsest to finest.
/// A degenerate input (no two usable spectrum levels) keeps its phase means
/// but carries NaN slope/hurst and the degenerate flag.
struct FeatureVector {
    double slope = 0.0;
    double hurst = 0.0;
    std::vector<double> phase_means;
    int first_level = 0;  ///< level of phase_means[0] (the coarsest)
    bool degenerate = false;
    std::string id, group, subject;
};

/// Builds transform plans on first use and reuses them across equally-sized
/// inputs. Not synchronized; share one extractor per thread.
class FeatureExtractor {
  public:
    explicit FeatureExtractor(TransformSettings settings);

    const TransformSettings& settings() const { return settings_; }

    FeatureVector from_signal(const Eigen::Ref<const Eigen::VectorXd>& y);
    FeatureVector from_image(const Eigen::Ref<const Eigen::MatrixXd>& A);

  private:
    TransformSettings settings_;
    ComplexFilterPair filter_;
    std::map<Eigen::Index, std::shared_ptr<const TransformPlan1D>> plans1d_;
    std::map<std::pair<Eigen::Index, Eigen::Index>,
             std::shared_ptr<const TransformPlan2D>>
        plans2d_;
};

/// Overlapping windows [0, window), [step, step+window), ... Windows that
/// would run past the end are dropped; a signal shorter than one window
/// yields nothing.
std::vector<Eigen::VectorXd> segment_signal(
    const Eigen::Ref<const Eigen::VectorXd>& y, Eigen::Index window,
    Eigen::Index step);

// ---------------------------------------------------------------------------
// two-way nested ANOVA and the subject-effect adjustment

struct Observation {
    std::string group;
    std::string subject;
    double value = 0.0;
};

struct AnovaRow {
    double ss = 0.0;
    long long df = 0;
    double ms = 0.0;
    double f = 0.0;  ///< versus the error mean square; 0 for the error row
};

struct NestedAnova {
    AnovaRow group, subject, error;
    double ss_total = 0.0;
    long long df_total = 0;
    double grand_mean = 0.0;
    std::map<std::string, double> group_effect;  ///< alpha_i
    std::map<std::pair<std::string, std::string>, double>
        subject_effect;             ///< beta_j(i), keyed (group, subject)
    std::vector<double> adjusted;   ///< y* = y - beta_j(i), input order
    std::vector<std::string> warnings;
};

/// Means-based estimates: beta_j(i) = mean(subject) - mean(group). Groups
/// with a single subject get beta = 0 and a warning. F statistics are taken
/// against the error mean square.
NestedAnova subject_adjust(const std::vector<Observation>& observations);

// ---------------------------------------------------------------------------
// nearest-centroid smoke classifier

enum class FeatureMask { SlopeOnly, PhaseOnly, SlopePhase };

struct ClassifierReport {
    std::vector<std::string> predicted;
    double accuracy = 0.0;
    std::map<std::string, double> sensitivity;
    std::map<std::string, double> specificity;
    std::map<std::pair<std::string, std::string>, std::size_t>
        confusion;  ///< (truth, predicted) -> count
};

/// z-scores the masked columns with training statistics, assigns each test
/// vector to the nearest class centroid (ties to the lexicographically
/// smallest label), and scores against test_labels when provided.
ClassifierReport nearest_centroid_classify(
    const std::vector<FeatureVector>& train,
    const std::vector<std::string>& train_labels,
    const std::vector<FeatureVector>& test, FeatureMask mask,
    const std::vector<std::string>& test_labels = {});

}  // namespace ndcwt
