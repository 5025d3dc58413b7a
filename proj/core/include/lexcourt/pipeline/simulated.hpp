#pragma once

#include <string>
#include <vector>

#include "lexcourt/gateway/provider.hpp"

namespace lexcourt::pipeline {

// Pure-function stand-in for every chat role of a run, keyed on the
// request's task tag. Replies are well-formed for their task and depend
// only on the request, so identical runs produce identical artifacts.
// Unknown tasks get MockProvider::digest_reply.
//
// `fallback_articles` are cited by the judge when its prompt offers no
// candidate or cited article (both ablations at once).
gateway::Responder simulated_responder(std::vector<std::string> fallback_articles = {});

}  // namespace lexcourt::pipeline
