#pragma once

#include <optional>
#include <string>
#include <vector>

#include "signrec/clustering.hpp"
#include "signrec/descriptors.hpp"

namespace signrec {

enum class TemplateHand { left, right, unknown };

// One enrolled gesture: single-hand signs only, labels 1..5. Numbers 6..10
// are compositions and are never stored.
struct GestureTemplate {
    int label = 0;
    FourierDescriptor descriptor;
    std::string signer_id;
    TemplateHand hand = TemplateHand::unknown;
};

struct TemplateSet {
    std::vector<GestureTemplate> templates;

    // labels of 1..5 with no template; nonempty means the set is incomplete
    std::vector<int> missing_labels() const;
};

struct HandLabel {
    int label = 0;
    double distance = 0.0;
    Side side = Side::only;
};

enum class RecognitionMode { single, both };

struct RecognitionResult {
    int number = 0;
    std::vector<HandLabel> hand_labels; // one or two, left first
    RecognitionMode mode = RecognitionMode::single;
};

double euclidean(const FourierDescriptor& a, const FourierDescriptor& b);

// Nearest template by Euclidean distance; ties go to the lowest label, then
// to the template stored first. An optional rejection radius (off by
// default) refuses matches beyond it.
HandLabel classify_hand(const FourierDescriptor& d, const TemplateSet& set,
                        std::optional<double> reject_distance = std::nullopt);

// One hand passes its label through; two hands sum theirs.
RecognitionResult combine(const std::vector<HandLabel>& hands);

// Text template file: "<label> <c1> ... <c15>" per line, '#' comments,
// optional trailing "signer=<tag>" and "hand=<l|r>" tokens.
TemplateSet load_templates(const std::string& path,
                           int coefficient_count = kDescriptorCoefficients);
void save_templates(const TemplateSet& set, const std::string& path);

} // namespace signrec
