#pragma once

#include "qba/qstate/bijection.hpp"
#include "qba/qstate/dense_unitary.hpp"
#include "qba/qstate/distribution.hpp"
#include "qba/qstate/layout.hpp"
#include "qba/qstate/schmidt.hpp"
#include "qba/qstate/sparse_state.hpp"
