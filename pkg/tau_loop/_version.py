__version__ = '0.1'

__copyright__ = """Copyright (C) 2026 the tau-loop developers
This is free software.  You may redistribute copies of it under the terms of
the GNU General Public License v3 <https://www.gnu.org/licenses/gpl-3.0.en.html>.
There is NO WARRANTY, to the extent permitted by law.
"""


def version_stamp(full):
    """
    Create a string indicating the version and possibly extended details such as copyright
    :param full: when True add extended details (multi-line)
    :return: a version stamp string
    """
    if full:
        return 'tau-loop {}\n{}'.format(__version__, __copyright__)
    else:
        return 'tau-loop {}'.format(__version__)


def runtime_info():
    """
    :return: runtime details for the debug log (never written into reports)
    """
    import platform
    return {'tau_loop_version': version_stamp(False),
            'python': platform.python_version(),
            'platform': platform.platform()}
