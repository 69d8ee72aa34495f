#include "ccdm/typemath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ccdm {

namespace {

constexpr double kSumTolerance = 1e-12;
const double kLn2 = std::log(2.0);

double lg(double x) { return std::log(x) / kLn2; }

} // namespace

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw std::invalid_argument("distribution needs k >= 1");
    double sum = 0.0;
    for (double p : probs_) {
        if (!std::isfinite(p) || p < 0.0)
            throw std::invalid_argument("probabilities must be finite and >= 0");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > kSumTolerance)
        throw std::invalid_argument("probabilities must sum to 1");
}

bool Distribution::strictly_positive() const {
    return std::all_of(probs_.begin(), probs_.end(), [](double p) { return p > 0.0; });
}

double Distribution::min_prob() const {
    return *std::min_element(probs_.begin(), probs_.end());
}

Distribution parse_distribution(std::string_view text) {
    std::vector<double> values;

    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '[') {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw FormatError(std::string("bad JSON distribution: ") + e.what());
        }
        if (!doc.is_array()) throw FormatError("distribution JSON must be an array");
        for (const auto& item : doc) {
            if (!item.is_number())
                throw FormatError("distribution JSON entries must be numbers");
            values.push_back(item.get<double>());
        }
    } else {
        std::istringstream lines{std::string(text)};
        std::string line;
        while (std::getline(lines, line)) {
            std::size_t begin = line.find_first_not_of(" \t\r");
            if (begin == std::string::npos) continue; // blank line
            std::size_t end = line.find_last_not_of(" \t\r");
            std::string token = line.substr(begin, end - begin + 1);
            try {
                std::size_t used = 0;
                double v = std::stod(token, &used);
                if (used != token.size()) throw std::invalid_argument(token);
                values.push_back(v);
            } catch (const std::exception&) {
                throw FormatError("bad probability value: '" + token + "'");
            }
        }
    }

    if (values.empty()) throw FormatError("empty distribution");
    double sum = 0.0;
    for (double v : values) {
        if (!std::isfinite(v)) throw FormatError("probabilities must be finite");
        if (v < 0.0) throw FormatError("probabilities must be >= 0");
        sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw FormatError("probabilities must sum to 1 within 1e-9");
    for (double& v : values) v /= sum;
    return Distribution(std::move(values));
}

Composition::Composition(std::vector<std::uint32_t> counts) : counts_(std::move(counts)) {
    if (counts_.empty()) throw std::invalid_argument("composition needs k >= 1");
    std::uint64_t total = std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
    if (total < 1) throw std::invalid_argument("composition needs n >= 1");
    if (total > std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument("composition total overflows");
    n_ = static_cast<std::uint32_t>(total);
}

Distribution Composition::type() const {
    std::vector<double> probs(counts_.size());
    for (std::size_t a = 0; a < counts_.size(); ++a)
        probs[a] = static_cast<double>(counts_[a]) / static_cast<double>(n_);
    return Distribution(std::move(probs));
}

BigInt type_class_size(const Composition& comp) {
    // multinomial(n; n_0..n_{k-1}) as a product of binomials over the
    // running total, each computed exactly.
    BigInt result = 1;
    BigInt binom;
    unsigned long total = 0;
    for (std::uint32_t c : comp.counts()) {
        total += c;
        mpz_bin_uiui(binom.get_mpz_t(), total, c);
        result *= binom;
    }
    return result;
}

unsigned input_length(const Composition& comp) {
    return floor_log2(type_class_size(comp));
}

CodeParams CodeParams::derive(Composition comp) {
    BigInt size = ccdm::type_class_size(comp);
    unsigned m = floor_log2(size);
    return CodeParams{std::move(comp), std::move(size), m};
}

double entropy(const Distribution& dist) {
    double h = 0.0;
    for (double p : dist.probs())
        if (p > 0.0) h -= p * lg(p);
    return h;
}

double kl_divergence(const Distribution& phat, const Distribution& p) {
    if (phat.size() != p.size())
        throw std::invalid_argument("kl_divergence needs equal alphabet sizes");
    double d = 0.0;
    for (std::size_t a = 0; a < phat.size(); ++a) {
        if (phat[a] == 0.0) continue;
        if (p[a] == 0.0)
            throw SupportViolation("phat has mass outside supp(p)");
        d += phat[a] * lg(phat[a] / p[a]);
    }
    return d;
}

Composition quantize_to_ntype(const Distribution& dist, std::uint32_t n) {
    if (n < 1) throw std::invalid_argument("quantize_to_ntype needs n >= 1");
    const std::size_t k = dist.size();
    std::vector<std::uint32_t> counts(k, 0);

    // Cost of the next increment for symbol a, given its current count.
    auto increment_cost = [&](std::size_t a) {
        double c = static_cast<double>(counts[a]);
        double np = static_cast<double>(n) * dist[a];
        double cost = (c + 1.0) * lg((c + 1.0) / np);
        if (counts[a] > 0) cost -= c * lg(c / np);
        return cost;
    };

    for (std::uint32_t step = 0; step < n; ++step) {
        std::size_t best = k;
        double best_cost = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < k; ++a) {
            if (dist[a] <= 0.0) continue;
            double cost = increment_cost(a);
            if (cost < best_cost) {
                best = a;
                best_cost = cost;
            }
        }
        ++counts[best];
    }
    return Composition(std::move(counts));
}

double normalized_divergence(const Distribution& dist, const Composition& comp) {
    Distribution pbar = comp.type();
    double h = entropy(pbar);
    double gap = kl_divergence(pbar, dist);
    double rate = static_cast<double>(input_length(comp)) / static_cast<double>(comp.n());
    return h - rate + gap;
}

double quantization_gap_bound(const Distribution& dist, std::uint32_t n) {
    if (n < 1) throw std::invalid_argument("quantization_gap_bound needs n >= 1");
    if (!dist.strictly_positive())
        throw ZeroProbability("gap bound needs strictly positive probabilities");
    double nn = static_cast<double>(n);
    return static_cast<double>(dist.size()) / (dist.min_prob() * nn * nn);
}

double rate_lower_bound(double entropy_value, std::uint32_t n, std::uint32_t k) {
    if (n < 1 || k < 1) throw std::invalid_argument("rate_lower_bound needs n, k >= 1");
    double nn = static_cast<double>(n);
    return -static_cast<double>(k) * lg(nn + static_cast<double>(k)) / nn
           + entropy_value - 1.0 / nn;
}

} // namespace ccdm
