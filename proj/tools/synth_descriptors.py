#!/usr/bin/env python3
# Copyright 2026 The FIFML Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the syscall descriptor corpus behind the seeded fault-mode library.

A handful of descriptors are written out by hand; the rest are synthesized
from a fixed syscall table with a seeded RNG, sized so that the generated
library has exactly the per-module mode counts in MODULE_TOTALS.

    python3 tools/synth_descriptors.py > data/descriptors.desc
"""

import argparse
import random
import sys

MODULE_TOTALS = {"fs": 1250, "int": 229, "io": 621, "mem": 173, "pro": 597}

# name: (internal function, params, operation phrase)
SYSCALLS = {
    "fs": [
        ("open", "do_sys_open", "pathname flags mode", "opening files"),
        ("openat", "do_sys_openat2", "dirfd pathname flags mode", "opening files relative to a directory"),
        ("creat", "do_sys_open", "pathname mode", "creating files"),
        ("close", "close_fd", "fd", "closing file descriptors"),
        ("read", "vfs_read", "fd buf count", "reading files"),
        ("write", "vfs_write", "fd buf count", "writing files"),
        ("pread64", "vfs_read", "fd buf count pos", "reading files at an offset"),
        ("pwrite64", "vfs_write", "fd buf count pos", "writing files at an offset"),
        ("readv", "do_readv", "fd vec vlen", "reading into multiple buffers"),
        ("writev", "do_writev", "fd vec vlen", "writing from multiple buffers"),
        ("fstat", "vfs_fstat", "fd statbuf", "querying file status"),
        ("stat", "vfs_statx", "filename statbuf", "querying file status by path"),
        ("lstat", "vfs_statx", "filename statbuf", "querying link status"),
        ("newfstatat", "vfs_statx", "dfd filename statbuf flag", "querying file status relative to a directory"),
        ("statx", "do_statx", "dfd filename flags mask buffer", "querying extended file status"),
        ("getdents", "iterate_dir", "fd dirent count", "reading directory entries"),
        ("getdents64", "iterate_dir", "fd dirent count", "reading 64-bit directory entries"),
        ("lseek", "vfs_llseek", "fd offset whence", "repositioning file offsets"),
        ("truncate", "do_sys_truncate", "path length", "truncating files by path"),
        ("ftruncate", "do_sys_ftruncate", "fd length", "truncating open files"),
        ("fsync", "vfs_fsync", "fd", "synchronizing file state"),
        ("fdatasync", "vfs_fsync", "fd", "synchronizing file data"),
        ("sync", "ksys_sync", "sb_list", "flushing file system buffers"),
        ("syncfs", "sync_filesystem", "fd", "flushing one file system"),
        ("rename", "do_renameat2", "oldname newname", "renaming files"),
        ("renameat2", "do_renameat2", "olddfd oldname newdfd newname flags", "renaming files relative to directories"),
        ("mkdir", "do_mkdirat", "pathname mode", "creating directories"),
        ("mkdirat", "do_mkdirat", "dfd pathname mode", "creating directories relative to a directory"),
        ("rmdir", "do_rmdir", "pathname", "removing directories"),
        ("unlink", "do_unlinkat", "pathname", "deleting files"),
        ("unlinkat", "do_unlinkat", "dfd pathname flag", "deleting files relative to a directory"),
        ("link", "do_linkat", "oldname newname", "creating hard links"),
        ("linkat", "do_linkat", "olddfd oldname newdfd newname flags", "creating hard links relative to directories"),
        ("symlink", "do_symlinkat", "oldname newname", "creating symbolic links"),
        ("symlinkat", "do_symlinkat", "oldname newdfd newname", "creating symbolic links relative to a directory"),
        ("readlink", "do_readlinkat", "path buf bufsiz", "reading symbolic links"),
        ("chmod", "do_fchmodat", "filename mode", "changing file permissions"),
        ("fchmod", "chmod_common", "fd mode", "changing permissions of open files"),
        ("chown", "do_fchownat", "filename user group", "changing file ownership"),
        ("fchown", "chown_common", "fd user group", "changing ownership of open files"),
        ("utimensat", "do_utimes", "dfd filename utimes flags", "updating file timestamps"),
        ("access", "do_faccessat", "filename mode", "checking file access permissions"),
        ("faccessat", "do_faccessat", "dfd filename mode", "checking access permissions relative to a directory"),
        ("mount", "do_mount", "dev_name dir_name type flags data", "mounting file systems"),
        ("umount2", "path_umount", "name flags", "unmounting file systems"),
        ("statfs", "user_statfs", "pathname buf", "querying file system statistics"),
        ("fstatfs", "fd_statfs", "fd buf", "querying statistics of an open file system"),
        ("fallocate", "vfs_fallocate", "fd mode offset len", "preallocating file space"),
        ("fadvise64", "vfs_fadvise", "fd offset len advice", "declaring file access patterns"),
        ("getxattr", "vfs_getxattr", "pathname name value size", "reading extended attributes"),
        ("setxattr", "vfs_setxattr", "pathname name value size flags", "writing extended attributes"),
        ("listxattr", "vfs_listxattr", "pathname list size", "listing extended attributes"),
        ("removexattr", "vfs_removexattr", "pathname name", "removing extended attributes"),
        ("chdir", "set_fs_pwd", "filename", "changing the working directory"),
        ("fchdir", "set_fs_pwd", "fd", "changing the working directory by descriptor"),
        ("getcwd", "d_path", "buf size", "querying the working directory"),
    ],
    "int": [
        ("kill", "kill_something_info", "pid sig", "sending signals to processes"),
        ("tkill", "do_tkill", "pid sig", "sending signals to threads"),
        ("tgkill", "do_tkill", "tgid pid sig", "sending signals to threads of a group"),
        ("rt_sigaction", "do_sigaction", "sig act oact sigsetsize", "installing signal handlers"),
        ("rt_sigprocmask", "sigprocmask", "how nset oset sigsetsize", "changing the blocked signal mask"),
        ("rt_sigpending", "do_sigpending", "uset sigsetsize", "examining pending signals"),
        ("rt_sigtimedwait", "do_sigtimedwait", "uthese uinfo uts sigsetsize", "waiting for queued signals"),
        ("rt_sigqueueinfo", "do_rt_sigqueueinfo", "pid sig uinfo", "queueing signals with data"),
        ("rt_sigsuspend", "sigsuspend", "unewset sigsetsize", "suspending until a signal arrives"),
        ("sigaltstack", "do_sigaltstack", "uss uoss", "setting the alternate signal stack"),
        ("alarm", "alarm_setitimer", "seconds", "scheduling alarm signals"),
        ("setitimer", "do_setitimer", "which value ovalue", "arming interval timers"),
        ("getitimer", "do_getitimer", "which value", "reading interval timers"),
        ("timer_create", "do_timer_create", "which_clock timer_event_spec created_timer_id", "creating POSIX timers"),
        ("timer_settime", "do_timer_settime", "timer_id flags new_setting old_setting", "arming POSIX timers"),
        ("timer_delete", "release_posix_timer", "timer_id", "deleting POSIX timers"),
        ("nanosleep", "hrtimer_nanosleep", "rqtp rmtp", "sleeping with high-resolution timers"),
        ("pause", "schedule", "current", "waiting for signals"),
    ],
    "io": [
        ("ioctl", "vfs_ioctl", "fd cmd arg", "controlling devices"),
        ("poll", "do_sys_poll", "ufds nfds timeout_msecs", "polling file descriptors"),
        ("ppoll", "do_sys_poll", "ufds nfds tsp sigmask sigsetsize", "polling file descriptors with a signal mask"),
        ("select", "core_sys_select", "n inp outp exp tvp", "multiplexing synchronous I/O"),
        ("pselect6", "core_sys_select", "n inp outp exp tsp sig", "multiplexing I/O with a signal mask"),
        ("epoll_create1", "do_epoll_create", "flags", "creating epoll instances"),
        ("epoll_ctl", "do_epoll_ctl", "epfd op fd event", "controlling epoll interest lists"),
        ("epoll_wait", "do_epoll_wait", "epfd events maxevents timeout", "waiting for epoll events"),
        ("epoll_pwait", "do_epoll_pwait", "epfd events maxevents timeout sigmask sigsetsize", "waiting for epoll events with a signal mask"),
        ("eventfd2", "do_eventfd", "count flags", "creating event notification descriptors"),
        ("pipe2", "do_pipe2", "fildes flags", "creating pipes"),
        ("dup", "f_dupfd", "fildes", "duplicating file descriptors"),
        ("dup3", "ksys_dup3", "oldfd newfd flags", "duplicating file descriptors to a given slot"),
        ("fcntl", "do_fcntl", "fd cmd arg", "manipulating file descriptors"),
        ("sendfile", "do_sendfile", "out_fd in_fd offset count", "transferring data between descriptors"),
        ("splice", "do_splice", "fd_in off_in fd_out off_out len flags", "splicing data through pipes"),
        ("tee", "do_tee", "fdin fdout len flags", "duplicating pipe content"),
        ("vmsplice", "do_vmsplice", "fd uiov nr_segs flags", "splicing user pages into pipes"),
        ("io_setup", "ioctx_alloc", "nr_events ctxp", "creating asynchronous I/O contexts"),
        ("io_submit", "io_submit_one", "ctx_id nr iocbpp", "submitting asynchronous I/O"),
        ("io_getevents", "do_io_getevents", "ctx_id min_nr nr events timeout", "reaping asynchronous I/O events"),
        ("io_destroy", "kill_ioctx", "ctx", "destroying asynchronous I/O contexts"),
        ("io_cancel", "kiocb_cancel", "ctx_id iocb result", "cancelling asynchronous I/O"),
        ("socket", "__sys_socket", "family type protocol", "creating network endpoints"),
        ("connect", "__sys_connect", "fd uservaddr addrlen", "connecting sockets"),
        ("sendto", "__sys_sendto", "fd buff len flags addr addr_len", "sending network messages"),
        ("recvfrom", "__sys_recvfrom", "fd ubuf size flags addr addr_len", "receiving network messages"),
        ("sendmsg", "__sys_sendmsg", "fd msg flags", "sending structured network messages"),
    ],
    "mem": [
        ("brk", "do_brk_flags", "brk", "adjusting the program break"),
        ("mmap", "do_mmap", "addr len prot flags fd off", "mapping files or devices into memory"),
        ("mremap", "do_mremap", "addr old_len new_len flags new_addr", "remapping virtual memory"),
        ("msync", "vfs_fsync_range", "start len flags", "synchronizing mapped files"),
        ("mincore", "do_mincore", "start len vec", "querying page residency"),
        ("madvise", "do_madvise", "start len_in behavior", "giving memory usage advice"),
        ("mlock", "do_mlock", "start len", "locking memory"),
        ("munlock", "apply_vma_lock_flags", "start len", "unlocking memory"),
        ("mlockall", "apply_mlockall_flags", "flags", "locking the whole address space"),
        ("munlockall", "apply_mlockall_flags", "mm", "unlocking the whole address space"),
        ("mprotect", "do_mprotect_pkey", "start len prot", "setting memory permission"),
        ("pkey_mprotect", "do_mprotect_pkey", "start len prot pkey", "setting memory permission with a protection key"),
        ("pkey_alloc", "mm_pkey_alloc", "flags init_val", "allocating protection keys"),
        ("pkey_free", "mm_pkey_free", "pkey", "freeing protection keys"),
        ("mbind", "do_mbind", "start len mode nmask maxnode flags", "binding memory to NUMA nodes"),
        ("set_mempolicy", "do_set_mempolicy", "mode nmask maxnode", "setting the NUMA memory policy"),
        ("get_mempolicy", "do_get_mempolicy", "policy nmask maxnode addr flags", "querying the NUMA memory policy"),
        ("migrate_pages", "do_migrate_pages", "pid maxnode old_nodes new_nodes", "migrating pages between nodes"),
        ("move_pages", "do_pages_move", "pid nr_pages pages nodes status flags", "moving individual pages"),
        ("shmget", "newseg", "key size shmflg", "allocating shared memory segments"),
        ("shmat", "do_shmat", "shmid shmaddr shmflg", "attaching shared memory segments"),
        ("shmdt", "ksys_shmdt", "shmaddr", "detaching shared memory segments"),
        ("shmctl", "ksys_shmctl", "shmid cmd buf", "controlling shared memory segments"),
        ("memfd_create", "alloc_file_pseudo", "uname flags", "creating anonymous memory files"),
        ("process_vm_readv", "process_vm_rw", "pid lvec liovcnt rvec riovcnt flags", "reading another process's memory"),
        ("munmap", "__vm_munmap", "addr len", "canceling the mapping of files or devices to memory"),
    ],
    "pro": [
        ("fork", "kernel_clone", "parent", "creating child processes"),
        ("vfork", "kernel_clone", "parent", "creating child processes sharing memory"),
        ("clone", "kernel_clone", "clone_flags newsp parent_tidptr child_tidptr tls", "cloning processes and threads"),
        ("execve", "do_execveat_common", "filename argv envp", "executing programs"),
        ("exit_group", "do_group_exit", "error_code", "exiting thread groups"),
        ("wait4", "kernel_wait4", "upid stat_addr options ru", "waiting for child processes"),
        ("waitid", "kernel_waitid", "which upid infop options ru", "waiting for child state changes"),
        ("getpid", "task_tgid_vnr", "current", "querying process identifiers"),
        ("setpgid", "ksys_setpgid", "pid pgid", "setting process groups"),
        ("setsid", "ksys_setsid", "current", "creating sessions"),
        ("setpriority", "set_one_prio", "which who niceval", "setting scheduling priority"),
        ("sched_setscheduler", "do_sched_setscheduler", "pid policy param", "setting the scheduling policy"),
        ("sched_setaffinity", "sched_setaffinity", "pid len user_mask_ptr", "setting CPU affinity"),
        ("sched_yield", "do_sched_yield", "runqueue", "yielding the processor"),
        ("prctl", "prctl_set_mm", "option arg2 arg3 arg4 arg5", "controlling process attributes"),
        ("ptrace", "ptrace_request", "request pid addr data", "tracing processes"),
        ("semget", "ipcget", "key nsems semflg", "creating semaphore sets"),
        ("semop", "do_semtimedop", "semid tsops nsops", "managing semaphore set"),
        ("semctl", "ksys_semctl", "semid semnum cmd arg", "controlling semaphore sets"),
        ("msgget", "ipcget", "key msgflg", "creating message queues"),
        ("msgsnd", "do_msgsnd", "msqid msgp msgsz msgflg", "sending messages"),
        ("msgrcv", "do_msgrcv", "msqid msgp msgsz msgtyp msgflg", "receiving messages"),
        ("futex", "do_futex", "uaddr op val utime uaddr2 val3", "waiting on fast user-space locks"),
        ("unshare", "ksys_unshare", "unshare_flags", "unsharing execution context"),
    ],
}

# Syscalls that hand a data buffer back to the caller; only these take BUF.
DATA_RETURNING = {
    "read", "pread64", "readv", "getdents", "getdents64", "readlink", "getxattr", "listxattr", "getcwd",
    "recvfrom", "mincore", "get_mempolicy", "process_vm_readv", "msgrcv", "rt_sigpending", "getitimer",
    "epoll_wait", "epoll_pwait", "io_getevents", "fstat", "stat", "lstat", "newfstatat", "statx", "statfs",
    "fstatfs",
}

ERRNO_POOLS = {
    "fs": "EINVAL EBADF EFAULT ENOENT EACCES EPERM EIO ENOSPC EEXIST ENOTDIR EISDIR ENAMETOOLONG ELOOP EROFS "
          "EMFILE EINTR EAGAIN EOVERFLOW EFBIG EDQUOT ENOMEM EBUSY EXDEV ENOTEMPTY ENODATA ERANGE",
    "int": "EINVAL EFAULT EPERM ESRCH EAGAIN EINTR ENOMEM ENOSYS",
    "io": "EINVAL EBADF EFAULT EAGAIN EINTR EIO ENOMEM EPIPE ENOTTY ESPIPE EMFILE ENFILE EOPNOTSUPP ETIMEDOUT "
          "EINPROGRESS EALREADY ECANCELED EBUSY",
    "mem": "EINVAL ENOMEM EACCES EFAULT EPERM EAGAIN EBUSY EOVERFLOW ENODEV ETXTBSY",
    "pro": "EINVAL EPERM ESRCH EAGAIN ENOMEM EFAULT ECHILD EINTR EIDRM E2BIG EACCES EDEADLK ERANGE ENOSPC EFBIG "
           "ENOEXEC",
}

PHRASES = {
    "EINVAL": "invalid {p} parameter", "ENOMEM": "memory overflow on {p}", "EACCES": "permission conflict on {p}",
    "EFAULT": "bad {p} address", "EBADF": "bad descriptor in {p}", "ENOENT": "missing object named by {p}",
    "EPERM": "operation on {p} not permitted", "EAGAIN": "{p} temporarily unavailable",
    "EINTR": "interrupted while handling {p}", "EIO": "low-level I/O failure on {p}", "ENOSPC": "no space left for {p}",
    "EEXIST": "{p} already exists", "EBUSY": "{p} busy", "E2BIG": "{p} too large", "EOVERFLOW": "{p} value overflow",
    "ENOTDIR": "{p} not a directory", "EISDIR": "{p} is a directory", "ENAMETOOLONG": "{p} name too long",
    "ELOOP": "too many symbolic links in {p}", "EROFS": "{p} on a read-only file system",
    "EMFILE": "descriptor table full for {p}", "ENFILE": "system file table full for {p}",
    "ESRCH": "no such process for {p}", "ECHILD": "no child process for {p}", "EIDRM": "identifier {p} removed",
    "ERANGE": "{p} out of range", "ENOSYS": "{p} operation not implemented",
    "EOPNOTSUPP": "{p} operation not supported", "ETIMEDOUT": "{p} timed out", "EDEADLK": "deadlock on {p}",
    "ESPIPE": "illegal seek on {p}", "EPIPE": "broken pipe on {p}", "ENOTTY": "inappropriate control {p}",
    "EFBIG": "{p} exceeds file size limit", "EDQUOT": "disk quota exceeded for {p}", "ENODEV": "no device for {p}",
    "ETXTBSY": "{p} text file busy", "EXDEV": "{p} crosses devices", "ENOTEMPTY": "{p} not empty",
    "ENODATA": "no data for {p}", "ECANCELED": "{p} cancelled", "EINPROGRESS": "{p} already in progress",
    "EALREADY": "{p} operation already pending", "ENOEXEC": "{p} has an unknown executable format",
}

# Hand-written descriptors: (module, name) -> (param faults, extras).
HAND = {
    ("mem", "mprotect"): ([(0, "EINVAL", "invalid address parameter"),
                          (1, "ENOMEM", "memory overflow"),
                          (2, "EACCES", "permission conflict")], []),
    ("pro", "semop"): ([(0, "EIDRM", "semaphore does not exist"),
                        (1, "EFAULT", "semaphore operation buffer address inaccessible"),
                        (2, "E2BIG", "too many semaphore operations")], []),
    ("mem", "munmap"): ([(0, "EINVAL", "unaligned address parameter"),
                         (1, "EINVAL", "zero length parameter"),
                         (0, "ENOMEM", "address outside the process address space"),
                         (1, "ENOMEM", "mapping count overflow"),
                         (0, "EFAULT", "bad address"),
                         (0, "EPERM", "sealed mapping"),
                         (1, "EINVAL", "invalid parameter")],
                        [("DLY", {"delay_ms": "500"}), ("DWN", {"restart": "true"}),
                         ("DOS", {"signal": "SEGV"}), ("CPU", {"load_factor": "4"})]),
    ("fs", "read"): ([(0, "EBADF", "bad file descriptor"),
                      (1, "EFAULT", "bad buffer address"),
                      (2, "EINVAL", "invalid count parameter"),
                      (0, "EIO", "low-level I/O failure"),
                      (0, "EAGAIN", "no data available yet"),
                      (0, "EINTR", "interrupted by a signal"),
                      (0, "EISDIR", "descriptor refers to a directory")],
                     [("DLY", {"delay_ms": "500"}), ("BUF", {"offset": "0", "length": "4", "pattern": "0xFF"}),
                      ("DWN", {"restart": "true"}), ("DOS", {"signal": "KILL"}), ("CPU", {"load_factor": "4"})]),
}

DLY_CHOICES = ["100", "250", "500", "1000", "2000"]
CPU_CHOICES = ["2", "3", "4", "8"]
SIGNAL_CHOICES = ["KILL", "KILL", "TERM", "SEGV", "STOP"]


def extra_overrides(code, rng):
    if code == "DLY":
        return {"delay_ms": rng.choice(DLY_CHOICES)}
    if code == "BUF":
        return {"offset": str(rng.choice([0, 0, 1, 2])), "length": str(rng.choice([1, 2, 4, 8])),
                "pattern": rng.choice(["0xFF", "0x00", "0xAA"])}
    if code == "DWN":
        return {"restart": "true" if rng.random() < 0.7 else "false"}
    if code == "DOS":
        return {"signal": rng.choice(SIGNAL_CHOICES)}
    return {"load_factor": rng.choice(CPU_CHOICES)}


def synth(module, name, params, total, rng):
    allowed = ["DLY", "DWN", "DOS", "CPU"] + (["BUF"] if name in DATA_RETURNING else [])
    n_extra = min(len(allowed), total - 1, rng.choice([2, 3, 4, 4, 5, 5]))
    pool = ERRNO_POOLS[module].split()
    combos = [(i, e) for e in pool for i in range(len(params))]
    n_extra = max(n_extra, total - len(combos))
    extras = sorted(rng.sample(allowed, n_extra), key=["DLY", "BUF", "DWN", "DOS", "CPU"].index)
    n_faults = total - n_extra
    if len(combos) < n_faults:
        raise SystemExit(f"{name}: only {len(combos)} fault combinations for {n_faults} faults")
    head = (0, "EINVAL")
    rest = [c for c in combos if c != head]
    rng.shuffle(rest)
    chosen = [head] + rest[: n_faults - 1]
    faults = [(i, e, PHRASES[e].format(p=params[i])) for i, e in chosen]
    return faults, [(c, extra_overrides(c, rng)) for c in extras]


def capacity(module, name, params):
    extras = 4 + (1 if name in DATA_RETURNING else 0)
    return len(ERRNO_POOLS[module].split()) * len(params) + extras


def module_counts(module, entries):
    """Splits the module total over its descriptors in proportion to each
    descriptor's fault capacity (errno pool x params + extras)."""
    total = MODULE_TOTALS[module]
    fixed = {}
    caps = {}
    for name, _, params, _ in entries:
        if (module, name) in HAND:
            faults, extras = HAND[(module, name)]
            fixed[name] = len(faults) + len(extras)
        else:
            caps[name] = capacity(module, name, params.split())
    remaining = total - sum(fixed.values())
    cap_sum = sum(caps.values())
    if remaining > cap_sum:
        raise SystemExit(f"{module}: capacity {cap_sum} below {remaining}")
    counts = {n: max(2, remaining * c // cap_sum) for n, c in caps.items()}
    names = list(caps)
    i = 0
    while sum(counts.values()) != remaining:
        n = names[i % len(names)]
        if sum(counts.values()) < remaining and counts[n] < caps[n]:
            counts[n] += 1
        elif sum(counts.values()) > remaining and counts[n] > 2:
            counts[n] -= 1
        i += 1
    counts.update(fixed)
    assert sum(counts.values()) == total, module
    return counts


def emit(out, module, ordinal, name, internal, params, operation, faults, extras):
    out.write(f"syscall {name}\n")
    out.write(f"internal {internal}\n")
    out.write(f"module {module}\n")
    out.write(f"ordinal {ordinal}\n")
    out.write(f"operation {operation}\n")
    for p in params:
        out.write(f"param {p}\n")
    for i, e, d in faults:
        out.write(f"fault {i} {e} {d}\n")
    for code, kv in extras:
        out.write(f"extra {code}" + "".join(f" {k}={v}" for k, v in sorted(kv.items())) + "\n")
    out.write("end\n")


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--seed", type=int, default=20231)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    out = sys.stdout
    out.write("FIFML-DESC 1\n")
    out.write(f"# Seeded descriptor corpus (tools/synth_descriptors.py --seed {args.seed}).\n")
    out.write("# mprotect, semop, munmap and read are hand-written; the rest are synthesized.\n")
    for module, entries in SYSCALLS.items():
        counts = module_counts(module, entries)
        out.write(f"\n# ---- {module}: {len(entries)} syscalls, {MODULE_TOTALS[module]} modes ----\n")
        for ordinal, (name, internal, params, operation) in enumerate(entries, start=1):
            params = params.split()
            if (module, name) in HAND:
                faults, extras = HAND[(module, name)]
            else:
                faults, extras = synth(module, name, params, counts[name], rng)
            emit(out, module, ordinal, name, internal, params, operation, faults, extras)


if __name__ == "__main__":
    main()
