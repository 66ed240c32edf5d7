#pragma once

#include <stdexcept>
#include <string>

namespace signrec {

enum class Errc {
    // file I/O
    bad_magic,
    truncated_file,
    depth_out_of_range,
    unsupported_format,
    io_failure,
    invalid_spec,
    // segmentation
    no_object,
    too_few_pixels,
    // contour
    region_too_small,
    degenerate_shape,
    all_bins_empty,
    // descriptors
    not_power_of_two,
    zero_dc,
    // classification
    empty_template_set,
    parse_error,
    bad_label,
    bad_coefficient_count,
    no_match,
};

const char* errc_name(Errc code);

// Common error type. The pipeline annotates errors with the stage that
// raised them before re-throwing.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}

    Errc code() const { return code_; }

    const std::string& stage() const { return stage_; }
    void set_stage(const std::string& stage) { stage_ = stage; }

private:
    Errc code_;
    std::string stage_;
};

} // namespace signrec
