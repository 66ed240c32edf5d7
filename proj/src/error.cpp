#include "signrec/error.hpp"

namespace signrec {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::bad_magic: return "BadMagic";
        case Errc::truncated_file: return "TruncatedFile";
        case Errc::depth_out_of_range: return "DepthOutOfRange";
        case Errc::unsupported_format: return "UnsupportedFormat";
        case Errc::io_failure: return "IoFailure";
        case Errc::invalid_spec: return "InvalidSpec";
        case Errc::no_object: return "NoObject";
        case Errc::too_few_pixels: return "TooFewPixels";
        case Errc::region_too_small: return "RegionTooSmall";
        case Errc::degenerate_shape: return "DegenerateShape";
        case Errc::all_bins_empty: return "AllBinsEmpty";
        case Errc::not_power_of_two: return "NotPowerOfTwo";
        case Errc::zero_dc: return "ZeroDC";
        case Errc::empty_template_set: return "EmptyTemplateSet";
        case Errc::parse_error: return "ParseError";
        case Errc::bad_label: return "BadLabel";
        case Errc::bad_coefficient_count: return "BadCoefficientCount";
        case Errc::no_match: return "NoMatch";
    }
    return "UnknownError";
}

} // namespace signrec
