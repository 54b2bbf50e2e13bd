"""
    .. _pcmmisc-miscutils:

    **miscutils**
    -------------

    Debug printing, fatal exits and small dict/string helpers shared by the
    model packages.

    Debug output is switched on per module through environment variables
    holding an integer level, e.g. ``ENGINE_DEBUG=3``. ``PCM_DEBUG`` wins
    over every module variable.
"""

import datetime
import inspect
import os
import re
import sys
from collections.abc import Mapping
from copy import deepcopy

GLOBAL_DEBUG_VAR = 'PCM_DEBUG'

_RANGE = re.compile(r"(\d+):(\d+)$")
_TRUE_WORDS = ('y', 'yes', 'true', 'on')
_FALSE_WORDS = ('n', 'no', 'false', 'off')


#######################################################################
def _debug_level(envdbgvar):
    """ Raw debug level for a variable name, '0' when none is set """
    env = os.environ
    if GLOBAL_DEBUG_VAR in env:
        return env[GLOBAL_DEBUG_VAR]
    if envdbgvar in env:
        return env[envdbgvar]
    if '_' in envdbgvar:
        fallback = envdbgvar.split('_')[0] + '_DEBUG'
        return env.get(fallback, '0')
    return '0'


def fwdebug_check(msglvl, envdbgvar):
    """ Whether a message of level msglvl should be printed

        The level in effect is read from PCM_DEBUG, else from envdbgvar,
        else from the variable made of envdbgvar's first word and '_DEBUG'
        (ENGINE_EVENTS falls back to ENGINE_DEBUG), else it is 0.

        Parameters
        ----------
        msglvl : int
            Level of the message; 0 is always printed, larger is chattier.

        envdbgvar : str
            Name of the module's debug variable.

        Returns
        -------
        bool
            False as well when the variable does not hold an integer.
    """
    try:
        return int(_debug_level(envdbgvar)) >= int(msglvl)
    except ValueError:
        return False


def fwdebug_print(msgstr, msgprefix=''):
    """ Write a debug line with time and caller name to standard error """
    now = datetime.datetime.now().strftime("%Y/%m/%d %H:%M:%S")
    caller = inspect.stack()[1][3]
    sys.stderr.write("%s%s - %s - %s\n" % (msgprefix, now, caller, msgstr))


def fwdebug(msglvl, envdbgvar, msgstr, msgprefix=''):
    """ fwdebug_print guarded by fwdebug_check """
    if fwdebug_check(msglvl, envdbgvar):
        fwdebug_print(msgstr, msgprefix)


#######################################################################
def fwdie(msg, exitcode, depth=1):
    """ Print msg with the file, function and line of the caller, then exit

        Parameters
        ----------
        msg : str
            Reason for stopping.

        exitcode : int
            Process exit status.

        depth : int, optional
            Stack frame to report; 1 is the direct caller.
    """
    frame = inspect.stack()[depth]
    sys.stderr.write("%s:%s:%s: %s\n" % (os.path.basename(frame.filename), frame.function,
                                          frame.lineno, msg))
    sys.exit(exitcode)


#######################################################################
def fwsplit(fullstr, delim=','):
    """ Split a list written as text

        Brackets are dropped, items are stripped, empty items skipped and
        integer ranges ``a:b`` expanded inclusively.

        Examples
        --------
        >>> fwsplit('0.99, 0.90')
        ['0.99', '0.90']
        >>> fwsplit('[1, 4:6]')
        ['1', '4', '5', '6']
    """
    text = fullstr.translate({ord(c): None for c in '()[]'})
    items = []
    for item in (part.strip() for part in text.split(delim)):
        match = _RANGE.match(item)
        if match:
            first, last = int(match.group(1)), int(match.group(2))
            items.extend(str(i) for i in range(first, last + 1))
        elif item:
            items.append(item)
    return items


def coremakedirs(thedir):
    """ Create a directory and its parents; an existing one is fine """
    if thedir:
        os.makedirs(thedir, exist_ok=True)


#######################################################################
def convertBool(var):
    """ Interpret a configuration value as a bool

        None is False, ints are truthy when nonzero, and strings may be an
        integer or one of y/yes/true/on and n/no/false/off in any case.

        Raises
        ------
        ValueError
            For a string that is none of those.

        TypeError
            For any other type.
    """
    if var is None:
        return False
    if isinstance(var, (bool, int)):
        return bool(var)
    if not isinstance(var, str):
        raise TypeError("Cannot convert %r of type %s to bool" % (var, type(var).__name__))

    word = var.strip().lower()
    if re.match(r"[-+]?\d+$", word):
        return bool(int(word))
    if word in _TRUE_WORDS:
        return True
    if word in _FALSE_WORDS:
        return False
    raise ValueError("Cannot interpret '%s' as a bool" % var)


def updateOrderedDict(d, u):
    """ Merge u into d in place, descending into nested mappings

        Values taken from u are deep copies. A mapping in u that meets a
        scalar in d raises TypeError.
    """
    for key, val in u.items():
        if not isinstance(val, Mapping) or key not in d:
            d[key] = deepcopy(val)
        elif isinstance(d[key], Mapping):
            updateOrderedDict(d[key], val)
        else:
            raise TypeError("Expected a section for key %s, found %r" % (key, d[key]))


#######################################################################
def pretty_print_dict(the_dict, out_file=None, sortit=False, indent=4):
    """ Print a nested dict as indented ``key = value`` lines

        Parameters
        ----------
        the_dict : dict
            What to print.

        out_file : file, optional
            Destination. Default is standard output.

        sortit : bool, optional
            Sort keys at every level. Default False keeps insertion order.

        indent : int, optional
            Spaces added per nesting level. Default 4.
    """
    if not isinstance(the_dict, dict):
        raise TypeError("pretty_print_dict needs a dict, got %s" % type(the_dict).__name__)
    _print_level(the_dict, out_file or sys.stdout, sortit, indent, 0)


def _print_level(the_dict, out_file, sortit, step, depth):
    items = sorted(the_dict.items()) if sortit else the_dict.items()
    pad = ' ' * depth
    for key, value in items:
        if isinstance(value, dict):
            out_file.write("%s%s\n" % (pad, key))
            _print_level(value, out_file, sortit, step, depth + step)
        else:
            out_file.write("%s%s = %s\n" % (pad, key, value))
