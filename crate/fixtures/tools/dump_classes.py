#!/usr/bin/env python3
"""Minimal classfile disassembler used to produce fixture oracles.

Walks a directory of .class files and prints JSON with, per class: name,
superclass, interfaces, fields, and per method: name, descriptor, access
flags, max_locals, instruction offsets, line-number table and
local-variable table. Written independently of the Rust parser so the two
can be checked against each other.
"""
import json
import os
import struct
import sys

# operand byte counts for fixed-length opcodes; -1 marks variable length
OPERANDS = {}
for op in range(0x00, 0x10): OPERANDS[op] = 0          # nop .. dconst_1
OPERANDS[0x10] = 1; OPERANDS[0x11] = 2                  # bipush, sipush
OPERANDS[0x12] = 1; OPERANDS[0x13] = 2; OPERANDS[0x14] = 2  # ldc*
for op in range(0x15, 0x1a): OPERANDS[op] = 1          # xload
for op in range(0x1a, 0x36): OPERANDS[op] = 0          # xload_n, xaload
for op in range(0x36, 0x3b): OPERANDS[op] = 1          # xstore
for op in range(0x3b, 0x84): OPERANDS[op] = 0          # xstore_n .. arithmetic
OPERANDS[0x84] = 2                                      # iinc
for op in range(0x85, 0x99): OPERANDS[op] = 0          # conversions, compares
for op in range(0x99, 0xa9): OPERANDS[op] = 2          # if*, goto, jsr
OPERANDS[0xa9] = 1                                      # ret
OPERANDS[0xaa] = -1; OPERANDS[0xab] = -1                # switches
for op in range(0xac, 0xb2): OPERANDS[op] = 0          # returns
for op in range(0xb2, 0xb9): OPERANDS[op] = 2          # field ops, invokes
OPERANDS[0xb9] = 4; OPERANDS[0xba] = 4                  # invokeinterface, invokedynamic
OPERANDS[0xbb] = 2; OPERANDS[0xbc] = 1; OPERANDS[0xbd] = 2
OPERANDS[0xbe] = 0; OPERANDS[0xbf] = 0
OPERANDS[0xc0] = 2; OPERANDS[0xc1] = 2
OPERANDS[0xc2] = 0; OPERANDS[0xc3] = 0
OPERANDS[0xc4] = -1                                     # wide
OPERANDS[0xc5] = 3
OPERANDS[0xc6] = 2; OPERANDS[0xc7] = 2
OPERANDS[0xc8] = 4; OPERANDS[0xc9] = 4


class Reader:
    def __init__(self, data):
        self.data = data
        self.pos = 0

    def u1(self):
        v = self.data[self.pos]
        self.pos += 1
        return v

    def u2(self):
        v = struct.unpack_from(">H", self.data, self.pos)[0]
        self.pos += 2
        return v

    def u4(self):
        v = struct.unpack_from(">I", self.data, self.pos)[0]
        self.pos += 4
        return v

    def bytes(self, n):
        v = self.data[self.pos:self.pos + n]
        self.pos += n
        return v


def instruction_offsets(code):
    offsets = []
    pc = 0
    while pc < len(code):
        offsets.append(pc)
        op = code[pc]
        n = OPERANDS[op]
        if n >= 0:
            pc += 1 + n
        elif op == 0xc4:
            pc += 6 if code[pc + 1] == 0x84 else 4
        else:
            base = pc
            pc += 1
            pc += (4 - pc % 4) % 4
            if op == 0xaa:
                low = struct.unpack_from(">i", code, pc + 4)[0]
                high = struct.unpack_from(">i", code, pc + 8)[0]
                pc += 12 + 4 * (high - low + 1)
            else:
                npairs = struct.unpack_from(">i", code, pc + 4)[0]
                pc += 8 + 8 * npairs
            assert pc > base
    return offsets


def parse(data):
    r = Reader(data)
    assert r.u4() == 0xCAFEBABE
    minor, major = r.u2(), r.u2()
    count = r.u2()
    pool = [None] * count
    i = 1
    while i < count:
        tag = r.u1()
        if tag == 1:
            pool[i] = ("utf8", r.bytes(r.u2()).decode("utf-8", "replace"))
        elif tag in (3, 4):
            pool[i] = ("num", r.u4())
        elif tag in (5, 6):
            pool[i] = ("wide", r.u4(), r.u4())
            i += 1
        elif tag in (7, 8, 16, 19, 20):
            pool[i] = ("ref1", tag, r.u2())
        elif tag in (9, 10, 11, 12, 17, 18):
            pool[i] = ("ref2", tag, r.u2(), r.u2())
        elif tag == 15:
            pool[i] = ("mh", r.u1(), r.u2())
        else:
            raise ValueError("bad tag %d" % tag)
        i += 1

    def utf(idx):
        return pool[idx][1]

    def cls(idx):
        return utf(pool[idx][2]) if idx else None

    access = r.u2()
    this = cls(r.u2())
    sup = cls(r.u2())
    interfaces = [cls(r.u2()) for _ in range(r.u2())]

    def attributes():
        out = {}
        for _ in range(r.u2()):
            name = utf(r.u2())
            length = r.u4()
            out.setdefault(name, []).append(r.bytes(length))
        return out

    fields = []
    for _ in range(r.u2()):
        facc, fname, fdesc = r.u2(), utf(r.u2()), utf(r.u2())
        attributes()
        fields.append({"name": fname, "descriptor": fdesc, "access": facc})

    methods = []
    for _ in range(r.u2()):
        macc, mname, mdesc = r.u2(), utf(r.u2()), utf(r.u2())
        attrs = attributes()
        m = {"name": mname, "descriptor": mdesc, "access": macc}
        if "Code" in attrs:
            c = Reader(attrs["Code"][0])
            c.u2()
            m["max_locals"] = c.u2()
            code = c.bytes(c.u4())
            m["code_length"] = len(code)
            m["instructions"] = instruction_offsets(code)
            c.bytes(8 * c.u2())
            lines, locals_ = [], []
            for _ in range(c.u2()):
                name = utf(c.u2())
                body = Reader(c.bytes(c.u4()))
                if name == "LineNumberTable":
                    for _ in range(body.u2()):
                        lines.append([body.u2(), body.u2()])
                elif name == "LocalVariableTable":
                    for _ in range(body.u2()):
                        start, length = body.u2(), body.u2()
                        vname, vdesc, slot = utf(body.u2()), utf(body.u2()), body.u2()
                        locals_.append({"start": start, "length": length, "name": vname,
                                        "descriptor": vdesc, "slot": slot})
            m["line_numbers"] = lines
            m["local_variables"] = sorted(locals_, key=lambda v: (v["slot"], v["start"]))
        methods.append(m)
    return {"name": this, "major": major, "minor": minor, "access": access, "superclass": sup,
            "interfaces": interfaces, "fields": fields, "methods": methods}


def main():
    root = sys.argv[1]
    classes = []
    for dirpath, _, files in os.walk(root):
        for f in files:
            if f.endswith(".class"):
                path = os.path.join(dirpath, f)
                with open(path, "rb") as fh:
                    c = parse(fh.read())
                c["path"] = os.path.relpath(path, root)
                classes.append(c)
    classes.sort(key=lambda c: c["name"])
    json.dump({"classes": classes}, sys.stdout, indent=1, sort_keys=True)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
