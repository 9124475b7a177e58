#ifndef QQFORGE_ERRORS_HPP
#define QQFORGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qqforge {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct not_divisible : error { using error::error; };
struct non_integral : error { using error::error; };
struct limit_diverges : error { using error::error; };
struct rank_too_small : error { using error::error; };
struct mixed_degree : error { using error::error; };
struct unsupported_family : error { using error::error; };
struct out_of_range : error { using error::error; };
struct not_hook : error { using error::error; };
struct divisibility_fails : error { using error::error; };
struct unsupported_pair : error { using error::error; };
struct higher_order_pole : error { using error::error; };
struct unpaired_residue : error { using error::error; };
struct inconsistent_cycle : error { using error::error; };
struct not_adjacent : error { using error::error; };
struct not_bosonic : error { using error::error; };
struct wrong_family : error { using error::error; };

}  // namespace qqforge

#endif
