"""
    .. _pcmconfig-wcl:

    **wcl**
    -------

    Structured key-value documents for model configuration.

    A WCL object is an OrderedDict of sections, filled from JSON or from WCL
    text::

        <geometry>
            banks = 4
            subarray_count = 4096
        </geometry>

    WCL syntax:

    * ``#`` starts a comment, a trailing ``\\`` continues the line,
    * ``<name>`` / ``</name>`` open and close a section (names are lower
      cased, a section may not directly contain one of the same name),
    * ``key = value`` sets a value, kept as a string unless it is a JSON
      list (``[...]``); the schema in pcmconfig.runconfig converts them,
    * ``<<include file>>`` merges another document at that point, relative
      to the including file.

    Keys may be addressed with dotted paths, e.g. ``wcl.get('geometry.banks')``.
"""

import json
import os
import re
import sys
from collections import OrderedDict

import pcmmisc.miscutils as miscutils

_INCLUDE = re.compile(r"<<include (\S+)>>")
_CLOSE = re.compile(r"^</\s*(\S+)\s*>$")
_OPEN = re.compile(r"^<(\S+)>$")
_KEYVAL = re.compile(r"^(\S+?)\s*=\s*(.+?)$")


class WCL(OrderedDict):
    """ Configuration document: an OrderedDict with dotted-key access,
        recursive update and WCL/JSON reading and writing
    """

    @classmethod
    def from_file(cls, filename):
        """ Read a document, as JSON for a .json suffix and as WCL otherwise """
        doc = cls()
        with open(filename, 'r') as infh:
            if filename.lower().endswith('.json'):
                doc.read_json(infh, filename)
            else:
                doc.read(infh, filename=filename)
        return doc

    ###########################################################################
    def __contains__(self, key):
        return self.search(key)[0]

    def get(self, key, default=None):
        """ Value of a (dotted) key, default when it is missing """
        found, value = self.search(key)
        return value if found else default

    def set(self, key, val):
        """ Set a dotted key, creating missing sections """
        miscutils.fwdebug(9, 'WCL_DEBUG', "set %s = %s" % (key, val))
        *sections, name = key.split('.')
        node = self
        for section in sections:
            if not OrderedDict.__contains__(node, section):
                OrderedDict.__setitem__(node, section, OrderedDict())
            node = OrderedDict.__getitem__(node, section)
        OrderedDict.__setitem__(node, name, val)

    def search(self, key):
        """ Follow a dotted key section by section

            Returns
            -------
            tuple
                (found, value); value is None when not found.
        """
        if not isinstance(key, str):
            return OrderedDict.__contains__(self, key), OrderedDict.get(self, key)

        node = self
        for part in key.split('.'):
            if not isinstance(node, dict) or not dict.__contains__(node, part):
                return False, None
            node = dict.__getitem__(node, part)
        return True, node

    def update(self, udict):
        """ Recursive update, nested sections are merged key by key """
        miscutils.updateOrderedDict(self, udict)

    ###########################################################################
    def write(self, out_file=None, sortit=False, indent=4):
        """ Write the document as WCL text

            Parameters
            ----------
            out_file : file, optional
                Destination. Default is standard output.

            sortit : bool, optional
                Sort keys inside every section.

            indent : int, optional
                Spaces per section level. Default 4.
        """
        self._write_section(self, out_file or sys.stdout, sortit, indent, 0)

    def _write_section(self, section, out_file, sortit, step, depth):
        pad = ' ' * depth
        items = sorted(section.items()) if sortit else section.items()
        for key, value in items:
            if isinstance(value, dict):
                out_file.write("%s<%s>\n" % (pad, key))
                self._write_section(value, out_file, sortit, step, depth + step)
                out_file.write("%s</%s>\n" % (pad, key))
            elif isinstance(value, (list, tuple)):
                out_file.write("%s%s = %s\n" % (pad, key, json.dumps(list(value))))
            elif value is not None:
                out_file.write("%s%s = %s\n" % (pad, key, value))

    def write_json(self, out_file=None):
        """ Write the document as JSON with sorted keys """
        out_file = out_file or sys.stdout
        json.dump(self, out_file, indent=2, sort_keys=True)
        out_file.write('\n')

    ###########################################################################
    def read_json(self, in_file, filename='stdin'):
        """ Merge a JSON object into this document

            Raises
            ------
            SyntaxError
                If the text is not JSON or its top level is not an object.
        """
        try:
            data = json.load(in_file, object_pairs_hook=OrderedDict)
        except ValueError as err:
            raise SyntaxError('File %s - invalid JSON: %s' % (filename, err))
        if not isinstance(data, dict):
            raise SyntaxError('File %s - top level must be an object' % filename)
        self.update(data)

    def read(self, in_file, filename='stdin'):
        """ Merge WCL text into this document

            Parameters
            ----------
            in_file : file
                Open text file.

            filename : str, optional
                Name used in messages and to resolve includes.

            Raises
            ------
            SyntaxError
                With the file name and line number of the first bad line or
                of an unbalanced section.
        """
        stack = [('', self)]
        for lineno, line in _logical_lines(in_file):
            where = 'File %s Line %d' % (filename, lineno)

            match = _INCLUDE.search(line)
            if match:
                self.update(WCL.from_file(_include_path(match.group(1), filename)))
                continue

            match = _CLOSE.match(line)
            if match:
                name = match.group(1).lower()
                if name != stack[-1][0]:
                    raise SyntaxError('%s - close of section %s, expecting %s' %
                                      (where, name, stack[-1][0] or 'no close'))
                stack.pop()
                continue

            match = _OPEN.match(line)
            if match:
                name = match.group(1).lower()
                if name == stack[-1][0]:
                    raise SyntaxError('%s - section %s directly inside itself' % (where, name))
                node = stack[-1][1]
                if name not in node:
                    node[name] = OrderedDict()
                stack.append((name, node[name]))
                continue

            match = _KEYVAL.match(line)
            if match:
                stack[-1][1][match.group(1).lower()] = _wcl_value(match.group(2))
                continue

            raise SyntaxError('%s - line does not match any pattern: %s' % (where, line))

        if len(stack) != 1:
            raise SyntaxError('File %s - section %s is never closed' % (filename, stack[-1][0]))


def _logical_lines(in_file):
    """ (line number, text) of non-empty lines, continuations joined and
        comments removed; the number is that of the last physical line
    """
    pending = ''
    for lineno, raw in enumerate(in_file, 1):
        text = pending + raw.strip()
        if text.endswith('\\'):
            pending = text[:-1]
            continue
        pending = ''
        text = text.split('#', 1)[0].strip()
        if text:
            yield lineno, text
    if pending.strip():
        yield lineno, pending.split('#', 1)[0].strip()


def _include_path(name, parent):
    path = os.path.expandvars(os.path.expanduser(name))
    if not os.path.isabs(path) and parent != 'stdin':
        path = os.path.join(os.path.dirname(parent), path)
    return path


def _wcl_value(text):
    """ Decode list values, keep everything else as a string """
    if text.startswith('['):
        try:
            return json.loads(text)
        except ValueError:
            pass
    return text
