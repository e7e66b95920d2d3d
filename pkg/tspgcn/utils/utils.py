import csv
import logging
import os

import json5

logger = logging.getLogger(__name__)

OPERATORS = ["="]


def read_json5(path):
    with open(path) as data_file:
        content = json5.load(data_file)
    return content


def add_line(line, path):
    with open(path, "a") as save_f:
        save_f.write(line)


def read_lines(path):
    with open(path, "r", encoding="utf-8") as load_f:
        lines = [line.rstrip("\r\n") for line in load_f.readlines()]
    return lines


def write_lines(lines, path):
    with open(path, "w", encoding="utf-8", newline="\n") as save_f:
        for line in lines:
            save_f.write(line + "\n")


def write_csv(header, rows, path):
    ensure_parent_dir(path)
    with open(path, "w", encoding="utf-8", newline="") as save_f:
        writer = csv.writer(save_f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)


def read_csv(path):
    with open(path, encoding="utf-8", newline="") as csvfile:
        return [row for row in csv.reader(csvfile, delimiter=",", skipinitialspace=True)]


def ensure_parent_dir(path):
    parent = os.path.dirname(os.path.abspath(path))
    if parent and not os.path.isdir(parent):
        os.makedirs(parent, exist_ok=True)


def parse_key_value(line):
    ## line: "key=value" or "key = value  # comment"
    line = line.split("#", 1)[0].strip()
    if not line:
        return None, None
    for operator in OPERATORS:
        if operator in line:
            key, value = line.split(operator, 1)
            return key.strip(), value.strip()
    return line, None


def format_float(value, digits=6):
    return f"{value:.{digits}f}"
