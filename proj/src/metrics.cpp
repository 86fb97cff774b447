#include "metrics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "ascii_grid.hpp"
#include "error.hpp"

namespace habitat {

ConfusionMatrix confusion(std::span<const int> labels, std::span<const int> preds) {
    if (labels.size() != preds.size())
        throw InvalidArgument("labels and predictions differ in length (" +
                              std::to_string(labels.size()) + " vs " +
                              std::to_string(preds.size()) + ")");
    if (labels.empty()) throw InvalidArgument("cannot build a confusion matrix from zero samples");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == 1) {
            preds[i] == 1 ? ++cm.tp : ++cm.fn;
        } else {
            preds[i] == 1 ? ++cm.fp : ++cm.tn;
        }
    }
    return cm;
}

PrfResult precision_recall_f1(const ConfusionMatrix& cm) {
    PrfResult out;
    if (cm.tp + cm.fp > 0)
        out.precision = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp);
    if (cm.tp + cm.fn > 0)
        out.recall = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
    if (out.precision && out.recall && *out.precision + *out.recall > 0.0)
        out.f1 = 2.0 * *out.precision * *out.recall / (*out.precision + *out.recall);
    return out;
}

RocCurve roc_curve(std::span<const int> labels, std::span<const double> scores) {
    if (labels.size() != scores.size())
        throw InvalidArgument("labels and scores differ in length");
    const long positives = std::count(labels.begin(), labels.end(), 1);
    const long negatives = static_cast<long>(labels.size()) - positives;
    if (positives == 0 || negatives == 0)
        throw InvalidArgument("ROC curve requires both classes present");

    std::vector<std::size_t> order(labels.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    RocCurve curve;
    curve.points.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
    long tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        const double threshold = scores[order[i]];
        // Consume the whole tied group so ties collapse to one point.
        while (i < order.size() && scores[order[i]] == threshold) {
            labels[order[i]] == 1 ? ++tp : ++fp;
            ++i;
        }
        curve.points.push_back({static_cast<double>(fp) / static_cast<double>(negatives),
                                static_cast<double>(tp) / static_cast<double>(positives),
                                threshold});
    }
    return curve;
}

double auc(const RocCurve& curve) {
    double area = 0.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const auto& a = curve.points[i - 1];
        const auto& b = curve.points[i];
        area += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
    }
    return area;
}

namespace {

nlohmann::json optional_json(const std::optional<double>& v) {
    if (!v) return nullptr;
    return *v;
}

std::string optional_text(const std::optional<double>& v) {
    return v ? format_double(*v) : "undefined";
}

}  // namespace

std::string metrics_report_json(const ConfusionMatrix& cm, const PrfResult& prf,
                                double auc_value) {
    const nlohmann::json doc{
        {"precision", optional_json(prf.precision)},
        {"recall", optional_json(prf.recall)},
        {"f1", optional_json(prf.f1)},
        {"auc", auc_value},
        {"confusion", {{"tp", cm.tp}, {"fp", cm.fp}, {"tn", cm.tn}, {"fn", cm.fn}}}};
    return doc.dump(2) + "\n";
}

std::string metrics_report_text(const ConfusionMatrix& cm, const PrfResult& prf, double auc_value,
                                char delimiter) {
    const char d = delimiter;
    std::string out;
    out += std::string("metric") + d + "value\n";
    out += "precision" + std::string(1, d) + optional_text(prf.precision) + "\n";
    out += "recall" + std::string(1, d) + optional_text(prf.recall) + "\n";
    out += "f1" + std::string(1, d) + optional_text(prf.f1) + "\n";
    out += "auc" + std::string(1, d) + format_double(auc_value) + "\n";
    out += "tp" + std::string(1, d) + std::to_string(cm.tp) + "\n";
    out += "fp" + std::string(1, d) + std::to_string(cm.fp) + "\n";
    out += "tn" + std::string(1, d) + std::to_string(cm.tn) + "\n";
    out += "fn" + std::string(1, d) + std::to_string(cm.fn) + "\n";
    return out;
}

}  // namespace habitat
