#include "signrec/classify.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "signrec/error.hpp"

namespace signrec {

std::vector<int> TemplateSet::missing_labels() const {
    bool seen[6] = {};
    for (const GestureTemplate& t : templates)
        if (t.label >= 1 && t.label <= 5)
            seen[t.label] = true;
    std::vector<int> missing;
    for (int label = 1; label <= 5; ++label)
        if (!seen[label])
            missing.push_back(label);
    return missing;
}

double euclidean(const FourierDescriptor& a, const FourierDescriptor& b) {
    if (a.coefficients.size() != b.coefficients.size())
        throw Error(Errc::bad_coefficient_count, "descriptor sizes differ");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.coefficients.size(); ++i) {
        const double d = a.coefficients[i] - b.coefficients[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

HandLabel classify_hand(const FourierDescriptor& d, const TemplateSet& set,
                        std::optional<double> reject_distance) {
    if (set.templates.empty())
        throw Error(Errc::empty_template_set, "no templates to match against");
    int best_label = 0;
    double best_distance = 0.0;
    bool have = false;
    for (const GestureTemplate& t : set.templates) {
        const double dist = euclidean(d, t.descriptor);
        if (!have || dist < best_distance ||
            (dist == best_distance && t.label < best_label)) {
            best_label = t.label;
            best_distance = dist;
            have = true;
        }
    }
    if (reject_distance && best_distance > *reject_distance)
        throw Error(Errc::no_match, "nearest template beyond the rejection radius");
    return {best_label, best_distance, Side::only};
}

RecognitionResult combine(const std::vector<HandLabel>& hands) {
    if (hands.empty() || hands.size() > 2)
        throw Error(Errc::invalid_spec, "combine expects one or two classified hands");
    RecognitionResult result;
    result.hand_labels = hands;
    if (hands.size() == 1) {
        result.mode = RecognitionMode::single;
        result.number = hands[0].label;
    } else {
        result.mode = RecognitionMode::both;
        result.number = hands[0].label + hands[1].label;
    }
    return result;
}

namespace {

Error parse_fail(Errc code, const std::string& path, int line, const std::string& what) {
    return Error(code, path + ":" + std::to_string(line) + ": " + what);
}

} // namespace

TemplateSet load_templates(const std::string& path, int coefficient_count) {
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::io_failure, "cannot open " + path);
    TemplateSet set;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        std::istringstream tokens(line);
        std::string first;
        if (!(tokens >> first) || first[0] == '#')
            continue;
        GestureTemplate t;
        try {
            std::size_t used = 0;
            t.label = std::stoi(first, &used);
            if (used != first.size())
                throw std::invalid_argument(first);
        } catch (const std::exception&) {
            throw parse_fail(Errc::parse_error, path, line_number, "label is not an integer");
        }
        if (t.label < 1 || t.label > 5)
            throw parse_fail(Errc::bad_label, path, line_number,
                             "label must be in 1..5, got " + first);
        std::string token;
        while (tokens >> token) {
            if (token.rfind("signer=", 0) == 0) {
                t.signer_id = token.substr(7);
            } else if (token.rfind("hand=", 0) == 0) {
                const std::string hand = token.substr(5);
                if (hand == "l") t.hand = TemplateHand::left;
                else if (hand == "r") t.hand = TemplateHand::right;
                else throw parse_fail(Errc::parse_error, path, line_number,
                                      "hand must be l or r");
            } else {
                std::size_t used = 0;
                double value = 0.0;
                try {
                    value = std::stod(token, &used);
                } catch (const std::exception&) {
                    used = 0;
                }
                if (used != token.size())
                    throw parse_fail(Errc::parse_error, path, line_number,
                                     "bad coefficient '" + token + "'");
                t.descriptor.coefficients.push_back(value);
            }
        }
        if (t.descriptor.coefficients.size() != static_cast<std::size_t>(coefficient_count))
            throw parse_fail(Errc::bad_coefficient_count, path, line_number,
                             "expected " + std::to_string(coefficient_count) +
                                 " coefficients, got " +
                                 std::to_string(t.descriptor.coefficients.size()));
        set.templates.push_back(std::move(t));
    }
    return set;
}

void save_templates(const TemplateSet& set, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw Error(Errc::io_failure, "cannot create " + path);
    char buf[64];
    for (const GestureTemplate& t : set.templates) {
        out << t.label;
        for (double c : t.descriptor.coefficients) {
            std::snprintf(buf, sizeof buf, " %.17g", c);
            out << buf;
        }
        if (!t.signer_id.empty())
            out << " signer=" << t.signer_id;
        if (t.hand != TemplateHand::unknown)
            out << " hand=" << (t.hand == TemplateHand::left ? "l" : "r");
        out << "\n";
    }
    if (!out)
        throw Error(Errc::io_failure, "write failed for " + path);
}

} // namespace signrec
