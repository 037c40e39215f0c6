#include "ndcwt/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace ndcwt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

FeatureVector assemble(const LogscaleDiagram& diag, const PhaseSummary& phases,
                       const TransformSettings& s) {
    FeatureVector fv;
    fv.phase_means.reserve(phases.per_level.size());
    for (const auto& lvl : phases.per_level) fv.phase_means.push_back(lvl.mean);
    if (!phases.per_level.empty()) fv.first_level = phases.per_level.front().level;
    try {
        const SpectrumFit fit = fit_spectrum(diag, s.fit_levels, s.fit);
        fv.slope = fit.slope;
        fv.hurst = fit.hurst;
    } catch (const std::invalid_argument&) {
        fv.slope = kNaN;
        fv.hurst = kNaN;
        fv.degenerate = true;
    }
    return fv;
}

}  // namespace

FeatureExtractor::FeatureExtractor(TransformSettings settings)
    : settings_(std::move(settings)), filter_(get_filter(settings_.wavelet)) {
    if (settings_.depth < 1)
        throw std::invalid_argument("feature extraction needs depth >= 1");
}

FeatureVector FeatureExtractor::from_signal(
    const Eigen::Ref<const Eigen::VectorXd>& y) {
    auto it = plans1d_.find(y.size());
    if (it == plans1d_.end())
        it = plans1d_
                 .emplace(y.size(), std::make_shared<const TransformPlan1D>(
                                        y.size(), settings_.depth, filter_))
                 .first;
    const auto& plan = *it->second;
    const Coefficients1D coeffs =
        settings_.bridge ? plan.forward(bridge_detrend(y)) : plan.forward(y);
    return assemble(logscale_1d(coeffs), phase_averages_1d(coeffs), settings_);
}

FeatureVector FeatureExtractor::from_image(
    const Eigen::Ref<const Eigen::MatrixXd>& A) {
    const auto key = std::make_pair(A.rows(), A.cols());
    auto it = plans2d_.find(key);
    if (it == plans2d_.end())
        it = plans2d_
                 .emplace(key, std::make_shared<const TransformPlan2D>(
                                   A.rows(), A.cols(), settings_.depth,
                                   settings_.depth, filter_))
                 .first;
    const auto& plan = *it->second;
    const Coefficients2D coeffs =
        settings_.bridge ? plan.forward(bridge_detrend2d(A)) : plan.forward(A);
    return assemble(logscale_2d(coeffs, settings_.shift),
                    phase_averages_2d(coeffs, settings_.shift), settings_);
}

std::vector<Eigen::VectorXd> segment_signal(
    const Eigen::Ref<const Eigen::VectorXd>& y, Eigen::Index window,
    Eigen::Index step) {
    if (window < 1 || step < 1)
        throw std::invalid_argument("segment_signal: window and step must be >= 1");
    std::vector<Eigen::VectorXd> out;
    for (Eigen::Index start = 0; start + window <= y.size(); start += step)
        out.emplace_back(y.segment(start, window));
    return out;
}

NestedAnova subject_adjust(const std::vector<Observation>& observations) {
    if (observations.empty())
        throw std::invalid_argument("subject_adjust: empty design");

    struct Acc {
        double sum = 0.0;
        std::size_t n = 0;
        double mean() const { return sum / static_cast<double>(n); }
    };
    Acc total;
    std::map<std::string, Acc> groups;
    std::map<std::pair<std::string, std::string>, Acc> subjects;
    for (const auto& ob : observations) {
        total.sum += ob.value;
        ++total.n;
        auto& ga = groups[ob.group];
        ga.sum += ob.value;
        ++ga.n;
        auto& sa = subjects[{ob.group, ob.subject}];
        sa.sum += ob.value;
        ++sa.n;
    }

    NestedAnova out;
    out.grand_mean = total.mean();

    std::map<std::string, std::size_t> subjects_per_group;
    for (const auto& [key, acc] : subjects) ++subjects_per_group[key.first];
    for (const auto& [g, cnt] : subjects_per_group)
        if (cnt == 1)
            out.warnings.push_back("group '" + g +
                                   "' has a single subject; its nested effect is 0");

    for (const auto& [g, acc] : groups) {
        out.group_effect[g] = acc.mean() - out.grand_mean;
        out.group.ss += static_cast<double>(acc.n) *
                        (acc.mean() - out.grand_mean) * (acc.mean() - out.grand_mean);
    }
    for (const auto& [key, acc] : subjects) {
        const double beta = acc.mean() - groups[key.first].mean();
        out.subject_effect[key] = beta;
        out.subject.ss += static_cast<double>(acc.n) * beta * beta;
    }
    for (const auto& ob : observations) {
        const double r = ob.value - subjects[{ob.group, ob.subject}].mean();
        out.error.ss += r * r;
        const double t = ob.value - out.grand_mean;
        out.ss_total += t * t;
    }

    const auto a = static_cast<long long>(groups.size());
    const auto b_total = static_cast<long long>(subjects.size());
    const auto N = static_cast<long long>(observations.size());
    out.group.df = a - 1;
    out.subject.df = b_total - a;
    out.error.df = N - b_total;
    out.df_total = N - 1;

    auto finish = [](AnovaRow& row) {
        row.ms = row.df > 0 ? row.ss / static_cast<double>(row.df) : 0.0;
    };
    finish(out.group);
    finish(out.subject);
    finish(out.error);
    if (out.error.ms > 0.0) {
        out.group.f = out.group.ms / out.error.ms;
        out.subject.f = out.subject.ms / out.error.ms;
    }

    out.adjusted.reserve(observations.size());
    for (const auto& ob : observations)
        out.adjusted.push_back(ob.value -
                               out.subject_effect[{ob.group, ob.subject}]);
    return out;
}

namespace {

std::vector<double> masked_row(const FeatureVector& fv, FeatureMask mask) {
    std::vector<double> row;
    if (mask != FeatureMask::PhaseOnly) row.push_back(fv.slope);
    if (mask != FeatureMask::SlopeOnly)
        row.insert(row.end(), fv.phase_means.begin(), fv.phase_means.end());
    for (double v : row)
        if (!std::isfinite(v))
            throw std::invalid_argument(
                "nearest_centroid_classify: non-finite feature (degenerate input?)");
    return row;
}

}  // namespace

ClassifierReport nearest_centroid_classify(
    const std::vector<FeatureVector>& train,
    const std::vector<std::string>& train_labels,
    const std::vector<FeatureVector>& test, FeatureMask mask,
    const std::vector<std::string>& test_labels) {
    if (train.empty() || train.size() != train_labels.size())
        throw std::invalid_argument(
            "nearest_centroid_classify: training vectors and labels must align");
    if (!test_labels.empty() && test_labels.size() != test.size())
        throw std::invalid_argument(
            "nearest_centroid_classify: test labels must align with test vectors");

    std::vector<std::vector<double>> X;
    X.reserve(train.size());
    for (const auto& fv : train) X.push_back(masked_row(fv, mask));
    const std::size_t dim = X.front().size();
    for (const auto& row : X)
        if (row.size() != dim)
            throw std::invalid_argument(
                "nearest_centroid_classify: inconsistent feature dimensions");

    std::vector<double> mu(dim, 0.0), sigma(dim, 0.0);
    for (const auto& row : X)
        for (std::size_t d = 0; d < dim; ++d) mu[d] += row[d];
    for (double& v : mu) v /= static_cast<double>(X.size());
    for (const auto& row : X)
        for (std::size_t d = 0; d < dim; ++d)
            sigma[d] += (row[d] - mu[d]) * (row[d] - mu[d]);
    for (double& v : sigma) {
        v = std::sqrt(v / static_cast<double>(X.size()));
        if (v == 0.0) v = 1.0;
    }

    std::set<std::string> class_set(train_labels.begin(), train_labels.end());
    std::vector<std::string> classes(class_set.begin(), class_set.end());
    std::map<std::string, std::vector<double>> centroid;
    std::map<std::string, std::size_t> class_n;
    for (const auto& c : classes) centroid[c].assign(dim, 0.0);
    for (std::size_t i = 0; i < X.size(); ++i) {
        auto& cen = centroid[train_labels[i]];
        for (std::size_t d = 0; d < dim; ++d)
            cen[d] += (X[i][d] - mu[d]) / sigma[d];
        ++class_n[train_labels[i]];
    }
    for (const auto& c : classes) {
        if (class_n[c] == 0)
            throw std::invalid_argument("nearest_centroid_classify: empty class '" +
                                        c + "'");
        for (double& v : centroid[c]) v /= static_cast<double>(class_n[c]);
    }

    ClassifierReport rep;
    rep.predicted.reserve(test.size());
    for (const auto& fv : test) {
        const auto row = masked_row(fv, mask);
        if (row.size() != dim)
            throw std::invalid_argument(
                "nearest_centroid_classify: test feature dimension mismatch");
        double best = std::numeric_limits<double>::infinity();
        std::string best_class;
        for (const auto& c : classes) {  // sorted: ties resolve to smallest label
            double dist = 0.0;
            for (std::size_t d = 0; d < dim; ++d) {
                const double z = (row[d] - mu[d]) / sigma[d] - centroid[c][d];
                dist += z * z;
            }
            if (dist < best) {
                best = dist;
                best_class = c;
            }
        }
        rep.predicted.push_back(best_class);
    }

    if (!test_labels.empty()) {
        std::size_t correct = 0;
        std::map<std::string, std::size_t> truth_n, hit_n, fp_n;
        for (std::size_t i = 0; i < test.size(); ++i) {
            rep.confusion[{test_labels[i], rep.predicted[i]}]++;
            ++truth_n[test_labels[i]];
            if (rep.predicted[i] == test_labels[i]) {
                ++correct;
                ++hit_n[test_labels[i]];
            } else {
                ++fp_n[rep.predicted[i]];
            }
        }
        rep.accuracy = static_cast<double>(correct) / static_cast<double>(test.size());
        for (const auto& c : classes) {
            const auto pos = truth_n[c];
            const auto neg = test.size() - pos;
            rep.sensitivity[c] =
                pos ? static_cast<double>(hit_n[c]) / static_cast<double>(pos) : 0.0;
            rep.specificity[c] =
                neg ? static_cast<double>(neg - fp_n[c]) / static_cast<double>(neg)
                    : 0.0;
        }
    }
    return rep;
}

}  // namespace ndcwt
