#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace prodnet {

// Every analysis failure carries a stable error name so the CLI can forward it
// verbatim on stderr and tests can match on it.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& message)
        : std::runtime_error(message), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define PRODNET_DEFINE_ERROR(Name)                                             \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& message) : Error(#Name, message) {}   \
    }

PRODNET_DEFINE_ERROR(ParseError);
PRODNET_DEFINE_ERROR(SchemaError);
PRODNET_DEFINE_ERROR(InvariantError);
PRODNET_DEFINE_ERROR(UnknownEntityError);
PRODNET_DEFINE_ERROR(NegativeFlowError);
PRODNET_DEFINE_ERROR(MissingPriceError);
PRODNET_DEFINE_ERROR(NoProducerError);
PRODNET_DEFINE_ERROR(InactiveTechError);
PRODNET_DEFINE_ERROR(UnsupportedEconomyError);
PRODNET_DEFINE_ERROR(InfeasibleError);
PRODNET_DEFINE_ERROR(NotEquilibriumError);
PRODNET_DEFINE_ERROR(NonConvergenceError);
PRODNET_DEFINE_ERROR(TooLargeError);
PRODNET_DEFINE_ERROR(SolverError);
PRODNET_DEFINE_ERROR(CyclicError);
PRODNET_DEFINE_ERROR(CyclicNetworkError);
PRODNET_DEFINE_ERROR(NotPartialError);
PRODNET_DEFINE_ERROR(ForeignTechError);
PRODNET_DEFINE_ERROR(UndirectedCycleError);
PRODNET_DEFINE_ERROR(PreconditionError);
PRODNET_DEFINE_ERROR(IoError);

#undef PRODNET_DEFINE_ERROR

} // namespace prodnet
