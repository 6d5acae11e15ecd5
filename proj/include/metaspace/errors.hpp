#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace metaspace {

/// Base for every domain error. `code()` is a stable machine-readable tag
/// (e.g. "MissingAttribute"); `subject()` names the offending field, label or
/// entity when there is one.
class Error : public std::runtime_error
{
public:
    Error(std::string code, std::string subject, const std::string& message)
        : std::runtime_error(message), m_code(std::move(code)), m_subject(std::move(subject))
    {
    }

    const std::string& code() const noexcept { return m_code; }
    const std::string& subject() const noexcept { return m_subject; }

private:
    std::string m_code;
    std::string m_subject;
};

class AttributeError : public Error { using Error::Error; };
class FeatureError : public Error { using Error::Error; };
class MetricError : public Error { using Error::Error; };
class PromptError : public Error { using Error::Error; };
class ProviderError : public Error { using Error::Error; };
class ProfileError : public Error { using Error::Error; };
class WorldError : public Error { using Error::Error; };
class EngineError : public Error { using Error::Error; };
class PersistenceError : public Error { using Error::Error; };
class ServiceError : public Error { using Error::Error; };

} // namespace metaspace
