#include "blindpred/model_io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "blindpred/errors.hpp"

namespace blindpred {

namespace {

constexpr std::size_t kMaxShorthandLags = 1u << 16;

double parse_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    const auto* first = value.data();
    const auto* last = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last || !std::isfinite(out)) {
        throw Error(ErrorCode::InvalidInput, "bad numeric value for '" + key + "': '" + value + "'");
    }
    return out;
}

std::string format_number(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

CovarianceSequence white_noise_covariance(double sigma2) { return CovarianceSequence({sigma2}); }

CovarianceSequence ar1_covariance(double phi, double sigma2) {
    if (!(std::abs(phi) < 1.0)) throw Error(ErrorCode::DomainError, "AR(1) requires |phi| < 1");
    if (!(sigma2 > 0.0)) throw Error(ErrorCode::DomainError, "sigma2 must be positive");
    const double r0 = sigma2 / (1.0 - phi * phi);
    std::vector<double> r{r0};
    if (phi == 0.0) return CovarianceSequence(std::move(r));
    // Lags stop once r_k^2 underflows; the squared tail is then exactly 0 in double.
    double v = r0;
    while (r.size() < kMaxShorthandLags) {
        v *= phi;
        if (v * v == 0.0) break;
        r.push_back(v);
    }
    const double next = r.back() * phi;
    const double tail = next * next * 2.0 / (1.0 - phi * phi);
    return CovarianceSequence(std::move(r), tail);
}

CovarianceSequence ma1_covariance(double theta, double sigma2) {
    if (!(sigma2 > 0.0)) throw Error(ErrorCode::DomainError, "sigma2 must be positive");
    return CovarianceSequence({sigma2 * (1.0 + theta * theta), sigma2 * theta});
}

ProcessModel parse_model(std::string_view text) {
    std::map<std::string, std::string> kv;
    std::map<std::size_t, double> lags;

    std::string cleaned;
    cleaned.reserve(text.size());
    bool comment = false;
    for (char c : text) {
        if (c == '#') comment = true;
        if (c == '\n') comment = false;
        if (comment) continue;
        cleaned.push_back(c == ',' || c == ';' || c == '\n' || c == '\r' || c == '\t' ? ' ' : c);
    }

    std::istringstream in(cleaned);
    std::string token;
    while (in >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos && !kv.contains("model") && lags.empty() && kv.empty()) {
            kv.emplace("model", token);  // bare leading name, e.g. "ar1 phi=0.6"
            continue;
        }
        if (eq == std::string::npos || eq == 0 || eq + 1 == token.size()) {
            throw Error(ErrorCode::InvalidInput, "expected key=value, got '" + token + "'");
        }
        std::string key = token.substr(0, eq);
        std::string value = token.substr(eq + 1);
        if (key.size() > 2 && key.rfind("r_", 0) == 0) {
            std::size_t lag = 0;
            auto [ptr, ec] = std::from_chars(key.data() + 2, key.data() + key.size(), lag);
            if (ec != std::errc() || ptr != key.data() + key.size()) {
                throw Error(ErrorCode::InvalidInput, "bad lag key '" + key + "'");
            }
            if (!lags.emplace(lag, parse_double(key, value)).second) {
                throw Error(ErrorCode::InvalidInput, "duplicate key '" + key + "'");
            }
            continue;
        }
        if (!kv.emplace(key, value).second) throw Error(ErrorCode::InvalidInput, "duplicate key '" + key + "'");
    }

    auto take = [&](const std::string& key, double fallback) {
        auto it = kv.find(key);
        if (it == kv.end()) return fallback;
        double v = parse_double(key, it->second);
        kv.erase(it);
        return v;
    };

    const double s = take("s", 1.0);
    if (s < 1.0) throw Error(ErrorCode::DomainError, "Sobolev index s must be >= 1");

    std::string name = "explicit";
    if (auto it = kv.find("model"); it != kv.end()) {
        name = it->second;
        kv.erase(it);
    }

    std::optional<CovarianceSequence> cov;
    if (name == "explicit") {
        if (lags.empty()) throw Error(ErrorCode::InvalidInput, "model lists no r_k values");
        const std::size_t max_lag = lags.rbegin()->first;
        if (lags.size() != max_lag + 1) throw Error(ErrorCode::InvalidInput, "r_k lags must be contiguous from 0");
        std::vector<double> r;
        r.reserve(lags.size());
        for (const auto& [lag, v] : lags) r.push_back(v);
        cov.emplace(std::move(r), take("tail", 0.0));
    } else {
        if (!lags.empty()) throw Error(ErrorCode::InvalidInput, "r_k values are only valid for explicit models");
        const double sigma2 = take("sigma2", 1.0);
        if (name == "white") {
            cov.emplace(white_noise_covariance(sigma2));
        } else if (name == "ar1") {
            if (!kv.contains("phi")) throw Error(ErrorCode::InvalidInput, "ar1 requires phi");
            cov.emplace(ar1_covariance(take("phi", 0.0), sigma2));
        } else if (name == "ma1") {
            if (!kv.contains("theta")) throw Error(ErrorCode::InvalidInput, "ma1 requires theta");
            cov.emplace(ma1_covariance(take("theta", 0.0), sigma2));
        } else {
            throw Error(ErrorCode::InvalidInput, "unknown model '" + name + "'");
        }
    }
    if (!kv.empty()) throw Error(ErrorCode::InvalidInput, "unknown key '" + kv.begin()->first + "'");
    return ProcessModel{name, std::move(*cov), s};
}

ProcessModel load_model(const std::string& spec) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(spec, ec)) {
        std::ifstream in(spec);
        if (!in) throw Error(ErrorCode::InvalidInput, "cannot open model file " + spec);
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_model(buf.str());
    }
    return parse_model(spec);
}

std::string describe(const ProcessModel& model) {
    std::ostringstream os;
    os << "model=" << model.name << " s=" << format_number(model.sobolev_index)
       << " max_lag=" << model.cov.max_lag() << " r_0=" << format_number(model.cov.variance());
    if (model.cov.max_lag() >= 1) os << " r_1=" << format_number(model.cov.values()[1]);
    os << " tail=" << format_number(model.cov.tail_bound());
    return os.str();
}

}  // namespace blindpred
