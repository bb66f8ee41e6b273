#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "dirichlet/experiments.hpp"
#include "dirichlet/norms.hpp"
#include "dirichlet/polynomial.hpp"
#include "dirichlet/regions.hpp"
#include "dirichlet/superposition.hpp"

namespace dirichlet {

/// Minimal JSON emitter. Floating values print with 17 significant digits so
/// two runs of the same seeded command diff byte for byte; nlohmann's
/// shortest-round-trip formatting would also round-trip but is harder to
/// pin in documentation.
class JsonWriter {
public:
    JsonWriter& beginObject() { return punct("{"); }
    JsonWriter& endObject() {
        comma_ = true;
        out_ << '}';
        return *this;
    }
    JsonWriter& beginArray() { return punct("["); }
    JsonWriter& endArray() {
        comma_ = true;
        out_ << ']';
        return *this;
    }

    JsonWriter& key(const std::string& k) {
        sep();
        quoted(k);
        out_ << ':';
        comma_ = false;
        return *this;
    }

    JsonWriter& value(double v) {
        sep();
        char buf[40];
        if (std::isinf(v))
            std::snprintf(buf, sizeof(buf), "%s", v > 0 ? "\"inf\"" : "\"-inf\"");
        else
            std::snprintf(buf, sizeof(buf), "%.17g", v);
        out_ << buf;
        comma_ = true;
        return *this;
    }
    JsonWriter& value(std::uint64_t v) {
        sep();
        out_ << v;
        comma_ = true;
        return *this;
    }
    JsonWriter& value(int v) {
        sep();
        out_ << v;
        comma_ = true;
        return *this;
    }
    JsonWriter& value(bool v) {
        sep();
        out_ << (v ? "true" : "false");
        comma_ = true;
        return *this;
    }
    JsonWriter& value(const std::string& v) {
        sep();
        quoted(v);
        comma_ = true;
        return *this;
    }
    JsonWriter& value(const char* v) { return value(std::string(v)); }

    std::string str() const { return out_.str(); }

private:
    JsonWriter& punct(const char* s) {
        sep();
        out_ << s;
        comma_ = false;
        return *this;
    }
    void sep() {
        if (comma_) out_ << ',';
    }
    void quoted(const std::string& s) {
        out_ << '"';
        for (char c : s) {
            if (c == '"' || c == '\\') out_ << '\\';
            out_ << c;
        }
        out_ << '"';
    }

    std::ostringstream out_;
    bool comma_ = false;
};

/// Series files: {"terms": [[n, re, im], ...]} with n strictly increasing.
inline std::string series_to_json(const DirichletPolynomial& f) {
    JsonWriter w;
    w.beginObject().key("terms").beginArray();
    for (const auto& [n, a] : f.terms()) {
        w.beginArray().value(n).value(a.real()).value(a.imag()).endArray();
    }
    w.endArray().endObject();
    return w.str();
}

inline DirichletPolynomial series_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("terms") || !doc["terms"].is_array())
        throw std::domain_error("series: expected {\"terms\": [[n, re, im], ...]}");
    DirichletPolynomial::term_map terms;
    std::uint64_t prev = 0;
    for (const auto& entry : doc["terms"]) {
        if (!entry.is_array() || entry.size() != 3)
            throw std::domain_error("series: each term must be [n, re, im]");
        std::uint64_t n = entry[0].get<std::uint64_t>();
        if (n == 0) throw std::domain_error("series: indices start at 1");
        if (n <= prev) throw std::domain_error("series: indices must be strictly increasing");
        prev = n;
        std::complex<double> a(entry[1].get<double>(), entry[2].get<double>());
        if (!is_zero(a)) terms.emplace(n, a);
    }
    return DirichletPolynomial(std::move(terms));
}

inline DirichletPolynomial series_from_json_text(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text); // throws on malformed input
    return series_from_json(doc);
}

inline DirichletPolynomial series_from_stream(std::istream& in) {
    nlohmann::json doc = nlohmann::json::parse(in);
    return series_from_json(doc);
}

/// Scalar polynomial files: a plain coefficient array [c0, c1, ...] where
/// each c is either a real number or [re, im].
inline ScalarPolynomial scalar_polynomial_from_json(const nlohmann::json& doc) {
    if (!doc.is_array()) throw std::domain_error("phi: expected a coefficient array");
    ScalarPolynomial phi;
    for (const auto& c : doc) {
        if (c.is_array()) {
            if (c.size() != 2) throw std::domain_error("phi: complex entries are [re, im]");
            phi.coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
        } else {
            phi.coeffs.emplace_back(c.get<double>(), 0.0);
        }
    }
    return phi;
}

inline void write_norm_estimate(JsonWriter& w, const NormEstimate& est) {
    w.beginObject();
    w.key("value").value(est.value);
    w.key("method").value(to_string(est.method));
    w.key("error").value(est.error);
    w.key("n").value(est.n);
    w.endObject();
}

inline std::string norm_estimate_to_json(const NormEstimate& est) {
    JsonWriter w;
    write_norm_estimate(w, est);
    return w.str();
}

inline void write_space(JsonWriter& w, const SpaceParams& space) {
    w.beginObject();
    w.key("p").value(space.p);
    w.key("q").value(space.q);
    w.key("alpha").value(space.alpha);
    w.endObject();
}

inline void write_verdict(JsonWriter& w, const RegionVerdict& v) {
    w.beginObject();
    w.key("included").value(v.included);
    w.key("rule").value(v.rule);
    w.endObject();
}

inline std::string verdict_to_json(const RegionVerdict& v) {
    JsonWriter w;
    write_verdict(w, v);
    return w.str();
}

inline void write_experiment_report(JsonWriter& w, const ExperimentReport& report) {
    w.beginObject();
    w.key("mode").value(report.mode);
    w.key("model").value(report.model);
    w.key("space");
    write_space(w, report.space);
    w.key("schedule").beginArray();
    for (std::uint64_t n : report.schedule) w.value(n);
    w.endArray();
    w.key("stats").beginArray();
    for (double v : report.stats) w.value(v);
    w.endArray();
    w.key("verdict").value(to_string(report.verdict));
    w.key("seed").value(report.seed);
    w.key("trials").value(report.trials);
    w.endObject();
}

inline std::string experiment_report_to_json(const ExperimentReport& report) {
    JsonWriter w;
    write_experiment_report(w, report);
    return w.str();
}

/// "inf" (any case) or a number; used by CLI q-parameters.
inline double parse_exponent_or_inf(const std::string& s) {
    if (s == "inf" || s == "INF" || s == "Inf") return kInf;
    return std::stod(s);
}

} // namespace dirichlet
