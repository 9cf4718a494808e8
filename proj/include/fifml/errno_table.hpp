// Copyright 2026 The FIFML Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string_view>

namespace fifml {

/// Linux errno symbol recognized in fault modes and descriptor files.
struct ErrnoInfo {
  std::string_view symbol;
  int number;  // x86-64 Linux value
  std::string_view message;
};

// clang-format off
inline constexpr std::array kErrnoTable = {
    ErrnoInfo{"EPERM",        1,   "Operation not permitted"},
    ErrnoInfo{"ENOENT",       2,   "No such file or directory"},
    ErrnoInfo{"ESRCH",        3,   "No such process"},
    ErrnoInfo{"EINTR",        4,   "Interrupted system call"},
    ErrnoInfo{"EIO",          5,   "Input/output error"},
    ErrnoInfo{"ENXIO",        6,   "No such device or address"},
    ErrnoInfo{"E2BIG",        7,   "Argument list too long"},
    ErrnoInfo{"ENOEXEC",      8,   "Exec format error"},
    ErrnoInfo{"EBADF",        9,   "Bad file descriptor"},
    ErrnoInfo{"ECHILD",       10,  "No child processes"},
    ErrnoInfo{"EAGAIN",       11,  "Resource temporarily unavailable"},
    ErrnoInfo{"EWOULDBLOCK",  11,  "Operation would block"},
    ErrnoInfo{"ENOMEM",       12,  "Out of memory"},
    ErrnoInfo{"EACCES",       13,  "Permission denied"},
    ErrnoInfo{"EFAULT",       14,  "Bad address"},
    ErrnoInfo{"EBUSY",        16,  "Device or resource busy"},
    ErrnoInfo{"EEXIST",       17,  "File exists"},
    ErrnoInfo{"EXDEV",        18,  "Invalid cross-device link"},
    ErrnoInfo{"ENODEV",       19,  "No such device"},
    ErrnoInfo{"ENOTDIR",      20,  "Not a directory"},
    ErrnoInfo{"EISDIR",       21,  "Is a directory"},
    ErrnoInfo{"EINVAL",       22,  "Invalid argument"},
    ErrnoInfo{"ENFILE",       23,  "Too many open files in system"},
    ErrnoInfo{"EMFILE",       24,  "Too many open files"},
    ErrnoInfo{"ENOTTY",       25,  "Inappropriate ioctl for device"},
    ErrnoInfo{"ETXTBSY",      26,  "Text file busy"},
    ErrnoInfo{"EFBIG",        27,  "File too large"},
    ErrnoInfo{"ENOSPC",       28,  "No space left on device"},
    ErrnoInfo{"ESPIPE",       29,  "Illegal seek"},
    ErrnoInfo{"EROFS",        30,  "Read-only file system"},
    ErrnoInfo{"EMLINK",       31,  "Too many links"},
    ErrnoInfo{"EPIPE",        32,  "Broken pipe"},
    ErrnoInfo{"ERANGE",       34,  "Numerical result out of range"},
    ErrnoInfo{"EDEADLK",      35,  "Resource deadlock avoided"},
    ErrnoInfo{"ENAMETOOLONG", 36,  "File name too long"},
    ErrnoInfo{"ENOLCK",       37,  "No locks available"},
    ErrnoInfo{"ENOSYS",       38,  "Function not implemented"},
    ErrnoInfo{"ENOTEMPTY",    39,  "Directory not empty"},
    ErrnoInfo{"ELOOP",        40,  "Too many levels of symbolic links"},
    ErrnoInfo{"EIDRM",        43,  "Identifier removed"},
    ErrnoInfo{"ENODATA",      61,  "No data available"},
    ErrnoInfo{"ETIME",        62,  "Timer expired"},
    ErrnoInfo{"EOVERFLOW",    75,  "Value too large for defined data type"},
    ErrnoInfo{"EBADFD",       77,  "File descriptor in bad state"},
    ErrnoInfo{"EOPNOTSUPP",   95,  "Operation not supported"},
    ErrnoInfo{"ETIMEDOUT",    110, "Connection timed out"},
    ErrnoInfo{"EALREADY",     114, "Operation already in progress"},
    ErrnoInfo{"EINPROGRESS",  115, "Operation now in progress"},
    ErrnoInfo{"EDQUOT",       122, "Disk quota exceeded"},
    ErrnoInfo{"ECANCELED",    125, "Operation canceled"},
};
// clang-format on

constexpr std::optional<ErrnoInfo> lookup_errno(std::string_view symbol) {
  for (const auto& e : kErrnoTable)
    if (e.symbol == symbol) return e;
  return std::nullopt;
}

constexpr bool is_known_errno(std::string_view symbol) { return lookup_errno(symbol).has_value(); }

/// Errors a well-behaved task retries or shrugs off instead of aborting.
constexpr bool is_transient_errno(std::string_view symbol) {
  return symbol == "EINTR" || symbol == "EAGAIN" || symbol == "EWOULDBLOCK" ||
         symbol == "ETIMEDOUT" || symbol == "EINPROGRESS";
}

}  // namespace fifml
