#ifndef ORBITENT_VERSION_HPP
#define ORBITENT_VERSION_HPP

namespace orbitent {

inline constexpr const char* kToolName = "orbit-entropy";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace orbitent

#endif
