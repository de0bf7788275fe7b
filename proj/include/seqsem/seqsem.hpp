#pragma once

#include "ast.hpp"
#include "conformance.hpp"
#include "errors.hpp"
#include "oracle.hpp"
#include "parser.hpp"
#include "semantics.hpp"
