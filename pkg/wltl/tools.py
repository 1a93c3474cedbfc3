# coding: utf-8

import os


def is_string_type(value):
    return isinstance(value, str)


def is_list_of_string(values):
    return all(is_string_type(value) for value in values)


def check_for_string(parameter, name):
    if not is_string_type(parameter):
        raise ValueError('The parameter {} should be a string, found {}'.format(name, str(parameter)))


def check_for_int(parameter, name):
    if type(parameter) is not int:
        raise ValueError('The parameter {} should be an int, found {} type value ({})'.format(name, type(parameter), str(parameter)))


def check_for_positive_int(parameter, name):
    check_for_int(parameter, name)
    if parameter <= 0:
        raise ValueError('The parameter {} should be positive, found {}'.format(name, parameter))


def check_for_choice(parameter, name, choices):
    if parameter not in choices:
        raise ValueError('The parameter {} should be one of {}, found {}'.format(name, ', '.join(choices), str(parameter)))


def build_list(values, name):
    """
    Accept a whitespace separated string or a list of strings and return a list of strings.
    """
    if values is None:
        raise ValueError(name + ' is None, it must be a string or a list of strings')

    if is_string_type(values):
        return values.split()
    elif type(values) in (list, tuple):
        if is_list_of_string(values):
            return list(values)
        raise ValueError(name + ' must be a string or a list of strings')
    else:
        raise ValueError(name + ' must be a string or a list of strings')


def read_text_argument(value):
    """
    Returns the content of ``value`` when it names an existing file, else ``value`` itself.
    """
    if os.path.isfile(value):
        with open(value, encoding='utf-8') as f:
            return f.read()
    return value
