#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace habitat {

struct ConfusionMatrix {
    long tp = 0;
    long fp = 0;
    long tn = 0;
    long fn = 0;
    long total() const { return tp + fp + tn + fn; }
};

/// Counts agreement of binary predictions against labels. Lengths must match.
ConfusionMatrix confusion(std::span<const int> labels, std::span<const int> preds);

/// Metrics with an empty denominator are reported as absent, never as 0;
/// a silent zero would corrupt model selection.
struct PrfResult {
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> f1;
};

PrfResult precision_recall_f1(const ConfusionMatrix& cm);

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
    double threshold = 0.0;
};

/// Starts at (0,0) and ends at (1,1); fpr and tpr are non-decreasing.
struct RocCurve {
    std::vector<RocPoint> points;
};

/// One point per distinct score, thresholds descending (tied scores collapse
/// to a single point); a point's classifier is score >= threshold. Requires
/// both classes present.
RocCurve roc_curve(std::span<const int> labels, std::span<const double> scores);

/// Trapezoidal area under the curve. Equals the Mann-Whitney statistic of
/// the generating scores with ties counted 1/2.
double auc(const RocCurve& curve);

/// Report serializations used by the evaluate stage: a JSON document
/// {precision, recall, f1, auc, confusion} (absent metrics are null) and a
/// two-column delimited text table.
std::string metrics_report_json(const ConfusionMatrix& cm, const PrfResult& prf, double auc_value);
std::string metrics_report_text(const ConfusionMatrix& cm, const PrfResult& prf, double auc_value,
                                char delimiter);

}  // namespace habitat
