#include "ramlocus/io.hpp"

#include <cstdio>
#include <sstream>

namespace ramlocus {

namespace {

const Nat kJsonSafeMax = (Nat(1) << 53);

json matrix_rows(const Matrix& a) {
    json rows = json::array();
    for (unsigned i = 0; i < a.dim(); ++i) {
        json row = json::array();
        for (unsigned j = 0; j < a.dim(); ++j) row.push_back(nat_to_json(a.at(i, j).value()));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_rows(const Ring& ring, const json& rows) {
    if (!rows.is_array() || rows.empty()) throw BadParam("matrix rows: expected a nonempty array");
    const unsigned m = static_cast<unsigned>(rows.size());
    std::vector<Nat> values;
    values.reserve(static_cast<size_t>(m) * m);
    for (const json& row : rows) {
        if (!row.is_array() || row.size() != m)
            throw BadParam("matrix rows: expected a square row-of-rows layout");
        for (const json& v : row) values.push_back(nat_from_json(v));
    }
    return Matrix::from_values(ring, m, values);
}

json rational_to_json(const Rational& r) {
    return json{{"num", nat_to_json(boost::multiprecision::numerator(r))},
                {"den", nat_to_json(boost::multiprecision::denominator(r))}};
}

double rational_to_double(const Rational& r) {
    if (r == 0) return 0.0;
    const double direct = r.convert_to<double>();
    if (std::isfinite(direct) && direct != 0.0) return direct;
    return std::exp(log_rational(r));  // magnitudes beyond double range
}

}  // namespace

json nat_to_json(const Nat& v) {
    if (v >= 0 && v < kJsonSafeMax) return json(v.convert_to<uint64_t>());
    if (v < 0 && -v < kJsonSafeMax) return json(v.convert_to<int64_t>());
    return json(v.str());
}

Nat nat_from_json(const json& j) {
    if (j.is_number_unsigned()) return Nat(j.get<uint64_t>());
    if (j.is_number_integer()) return Nat(j.get<int64_t>());
    if (j.is_string()) {
        try {
            return Nat(j.get<std::string>());
        } catch (const std::exception&) {
            throw BadParam("integer field: cannot parse '" + j.get<std::string>() + "'");
        }
    }
    throw BadParam("integer field: expected a number or decimal string");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json matrix_to_json(const Matrix& a) {
    json entries = json::array();
    for (unsigned i = 0; i < a.dim(); ++i)
        for (unsigned j = 0; j < a.dim(); ++j) entries.push_back(nat_to_json(a.at(i, j).value()));
    return json{{"p", nat_to_json(Nat(a.ring().p()))},
                {"n", a.ring().n()},
                {"m", a.dim()},
                {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const json& j) {
    if (!j.contains("p") || !j.contains("n") || !j.contains("m") || !j.contains("entries"))
        throw BadParam("matrix: expected fields p, n, m, entries");
    const uint64_t p = nat_from_json(j.at("p")).convert_to<uint64_t>();
    const unsigned n = j.at("n").get<unsigned>();
    const unsigned m = j.at("m").get<unsigned>();
    const Ring& ring = ring_of(p, n);
    const json& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != static_cast<size_t>(m) * m)
        throw BadParam("matrix: entries must hold m*m values");
    std::vector<Nat> values;
    values.reserve(entries.size());
    for (const json& v : entries) values.push_back(nat_from_json(v));
    return Matrix::from_values(ring, m, values);
}

json tame_pair_to_json(const TamePair& pair) {
    return json{{"p", nat_to_json(Nat(pair.ring().p()))},
                {"n", pair.ring().n()},
                {"q", nat_to_json(Nat(pair.q))},
                {"sigma", matrix_rows(pair.sigma)},
                {"tau", matrix_rows(pair.tau)}};
}

TamePair tame_pair_from_json(const json& j) {
    for (const char* field : {"p", "n", "q", "sigma", "tau"})
        if (!j.contains(field)) throw BadParam(std::string("tame pair: missing field ") + field);
    const uint64_t p = nat_from_json(j.at("p")).convert_to<uint64_t>();
    const unsigned n = j.at("n").get<unsigned>();
    const uint64_t q = nat_from_json(j.at("q")).convert_to<uint64_t>();
    const Ring& ring = ring_of(p, n);
    Matrix sigma = matrix_from_rows(ring, j.at("sigma"));
    Matrix tau = matrix_from_rows(ring, j.at("tau"));
    return TamePair(std::move(sigma), std::move(tau), q);
}

json locus_record_to_json(const LocusRecord& rec) {
    return json{{"n", rec.n},
                {"group_size", nat_to_json(rec.group_size)},
                {"locus_size", nat_to_json(rec.locus_size)},
                {"excluded_b1_size", nat_to_json(rec.excluded_b1_size)},
                {"ratio", rational_to_json(rec.ratio)},
                {"ratio_float", rational_to_double(rec.ratio)}};
}

json locus_report_to_json(const LocusReport& report) {
    json series = json::array();
    for (const LocusRecord& rec : report.series) series.push_back(locus_record_to_json(rec));
    json out{{"p", nat_to_json(Nat(report.p))},
             {"m", report.m},
             {"spec", report.spec.str()},
             {"dimension", report.dimension},
             {"series", std::move(series)},
             {"truncated", report.truncated}};
    if (report.fixed_b) out["b"] = nat_to_json(*report.fixed_b);
    if (report.fitted_delta)
        out["fitted_delta"] = *report.fitted_delta;
    else
        out["fitted_delta"] = nullptr;
    if (report.truncated) out["truncated_level"] = report.truncated_level;
    return out;
}

std::string locus_report_to_csv(const LocusReport& report, const CsvComments& comments) {
    std::ostringstream os;
    for (const auto& [key, value] : comments) os << "# " << key << ": " << value << "\n";
    if (report.fitted_delta)
        os << "# fitted_delta: " << format_double(*report.fitted_delta) << "\n";
    if (report.truncated)
        os << "# truncated_at_level: " << report.truncated_level << "\n";
    os << "p,m,n,group_size,locus_size,excluded_b1_size,ratio_num,ratio_den,ratio_float\n";
    for (const LocusRecord& rec : report.series) {
        os << report.p << "," << report.m << "," << rec.n << "," << rec.group_size.str() << ","
           << rec.locus_size.str() << "," << rec.excluded_b1_size.str() << ","
           << boost::multiprecision::numerator(rec.ratio).str() << ","
           << boost::multiprecision::denominator(rec.ratio).str() << ","
           << format_double(rational_to_double(rec.ratio)) << "\n";
    }
    return os.str();
}

json density_trace_to_json(const SimConfig& config, const DensityTrace& trace) {
    json levels = json::array();
    for (const LevelTrace& level : trace.levels) {
        json entry{{"n", level.n},
                   {"primes_streamed", trace.primes.size()},
                   {"flagged", level.flagged_count},
                   {"degenerate", level.degenerate_count},
                   {"ci95", level.ci95}};
        if (level.final_estimate)
            entry["final_estimate"] = *level.final_estimate;
        else
            entry["final_estimate"] = nullptr;
        if (level.exact_reference) {
            entry["exact_reference"] = rational_to_json(*level.exact_reference);
            entry["exact_reference_float"] = rational_to_double(*level.exact_reference);
        }
        levels.push_back(std::move(entry));
    }
    return json{{"spec", config.spec.str()},
                {"p", nat_to_json(Nat(config.p))},
                {"seed", nat_to_json(Nat(config.seed))},
                {"prime_count", config.prime_count},
                {"levels", std::move(levels)}};
}

std::string density_trace_to_csv(const DensityTrace& trace, const CsvComments& comments) {
    std::ostringstream os;
    for (const auto& [key, value] : comments) os << "# " << key << ": " << value << "\n";
    os << "n,primes_streamed,flagged,degenerate,running_density,ci95,exact_reference\n";
    for (const LevelTrace& level : trace.levels) {
        os << level.n << "," << trace.primes.size() << "," << level.flagged_count << ","
           << level.degenerate_count << ",";
        if (level.final_estimate)
            os << format_double(*level.final_estimate);
        os << "," << format_double(level.ci95) << ",";
        if (level.exact_reference) os << format_double(rational_to_double(*level.exact_reference));
        os << "\n";
    }
    return os.str();
}

}  // namespace ramlocus
