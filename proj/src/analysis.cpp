#include "ccdm/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "ccdm/ranker.hpp"

namespace ccdm {

const std::vector<std::uint32_t>& preset_grid() {
    static const std::vector<std::uint32_t> grid = {
        10,   12,   13,   15,   18,   20,   23,   27,   31,   36,
        41,   47,   54,   63,   72,   83,   95,   110,  126,  146,
        168,  193,  222,  256,  295,  339,  391,  450,  518,  596,
        687,  791,  910,  1048, 1207, 1389, 1600, 1842, 2121, 2442,
        2812, 3237, 3728, 4292, 4942, 5690, 6551, 7543, 8685, 10000};
    return grid;
}

std::vector<SweepRecord> sweep(const Distribution& dist,
                               const std::vector<std::uint32_t>& n_values) {
    if (n_values.empty())
        throw std::invalid_argument("sweep needs at least one blocklength");

    std::vector<SweepRecord> records;
    records.reserve(n_values.size());
    const auto k = static_cast<std::uint32_t>(dist.size());

    for (std::uint32_t n : n_values) {
        Composition comp = quantize_to_ntype(dist, n);
        unsigned m = input_length(comp);
        Distribution pbar = comp.type();
        double rate = static_cast<double>(m) / static_cast<double>(n);
        double h_bar = entropy(pbar);
        double kl_gap = kl_divergence(pbar, dist);
        double gap_bound = dist.strictly_positive()
                               ? quantization_gap_bound(dist, n)
                               : std::numeric_limits<double>::quiet_NaN();
        records.push_back(SweepRecord{
            n, std::move(comp), m, rate, h_bar,
            h_bar - rate + kl_gap, kl_gap, gap_bound,
            rate_lower_bound(h_bar, n, k)});
    }
    return records;
}

double empirical_divergence(const Distribution& dist, const CodeParams& params,
                            unsigned max_m) {
    if (params.m > max_m)
        throw TooLarge("codebook enumeration limit exceeded");
    if (dist.size() != params.k())
        throw std::invalid_argument("alphabet sizes differ");

    // Divergence of the uniform codebook distribution from the memoryless
    // target: every codeword has probability 2^-m against P(c) = prod p_a.
    // With log probabilities, (1/n) sum_c 2^-m (-m - log2 P(c)).
    const double ln2 = std::log(2.0);
    std::vector<double> logp(params.k());
    for (std::size_t a = 0; a < params.k(); ++a) {
        if (params.composition.count(a) > 0 && dist[a] == 0.0)
            throw SupportViolation("composition has mass outside supp(dist)");
        logp[a] = dist[a] > 0.0 ? std::log(dist[a]) / ln2 : 0.0;
    }

    const double mm = static_cast<double>(params.m);
    double divergence_sum = 0.0;
    BitSeq bits(params.m, 0);
    for (std::uint64_t j = 0; j < (std::uint64_t{1} << params.m); ++j) {
        for (unsigned pos = 0; pos < params.m; ++pos)
            bits[params.m - 1 - pos] = (j >> pos) & 1;
        SymbolSeq c = ref_encode(bits, params);
        double logpc = 0.0;
        for (Symbol s : c) logpc += logp[s];
        divergence_sum += -mm - logpc;
    }
    double scale = std::ldexp(1.0, -static_cast<int>(params.m)); // 2^-m
    return divergence_sum * scale / static_cast<double>(params.n());
}

namespace {

// 15 significant digits, the precision the reference series is quoted at.
std::string num15(double v) {
    if (std::isnan(v)) return "nan";
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.15g", v);
    return buffer;
}

std::string counts_joined(const Composition& comp, char sep) {
    std::string out;
    for (std::size_t a = 0; a < comp.size(); ++a) {
        if (a) out.push_back(sep);
        out += std::to_string(comp.count(a));
    }
    return out;
}

} // namespace

void emit_report(const std::vector<SweepRecord>& records, ReportFormat format,
                 std::ostream& out) {
    if (records.empty())
        throw std::invalid_argument("emit_report needs at least one record");

    if (format == ReportFormat::csv) {
        out << "n,m,rate,h_bar,ndiv,kl_gap,gap_bound,rate_bound,counts\n";
        for (const auto& r : records) {
            out << r.n << ',' << r.m << ',' << num15(r.rate) << ','
                << num15(r.h_bar) << ',' << num15(r.ndiv) << ','
                << num15(r.kl_gap) << ',' << num15(r.gap_bound) << ','
                << num15(r.rate_bound) << ',' << counts_joined(r.counts, ';')
                << '\n';
        }
    } else {
        // JSON is written by hand so numbers carry exactly 15 significant
        // digits; NaN has no JSON spelling and becomes null.
        auto jnum = [](double v) {
            return std::isnan(v) ? std::string("null") : num15(v);
        };
        out << "[\n";
        for (std::size_t i = 0; i < records.size(); ++i) {
            const auto& r = records[i];
            out << "  {\"n\": " << r.n << ", \"m\": " << r.m
                << ", \"rate\": " << jnum(r.rate)
                << ", \"h_bar\": " << jnum(r.h_bar)
                << ", \"ndiv\": " << jnum(r.ndiv)
                << ", \"kl_gap\": " << jnum(r.kl_gap)
                << ", \"gap_bound\": " << jnum(r.gap_bound)
                << ", \"rate_bound\": " << jnum(r.rate_bound)
                << ", \"counts\": [" << counts_joined(r.counts, ',') << "]}"
                << (i + 1 < records.size() ? ",\n" : "\n");
        }
        out << "]\n";
    }
    if (!out) throw IoFailure("writing report failed");
}

std::vector<SweepRecord> read_report_json(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("bad report JSON: ") + e.what());
    }
    if (!doc.is_array()) throw FormatError("report JSON must be an array");

    auto number_or_nan = [](const nlohmann::json& v) {
        if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
        if (!v.is_number()) throw FormatError("report field must be a number");
        return v.get<double>();
    };

    std::vector<SweepRecord> records;
    records.reserve(doc.size());
    for (const auto& item : doc) {
        if (!item.is_object()) throw FormatError("report entries must be objects");
        std::vector<std::uint32_t> counts;
        for (const auto& c : item.at("counts"))
            counts.push_back(c.get<std::uint32_t>());
        records.push_back(SweepRecord{
            item.at("n").get<std::uint32_t>(),
            Composition(std::move(counts)),
            item.at("m").get<unsigned>(),
            number_or_nan(item.at("rate")),
            number_or_nan(item.at("h_bar")),
            number_or_nan(item.at("ndiv")),
            number_or_nan(item.at("kl_gap")),
            number_or_nan(item.at("gap_bound")),
            number_or_nan(item.at("rate_bound"))});
    }
    return records;
}

} // namespace ccdm
