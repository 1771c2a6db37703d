from setuptools import setup

setup(
    packages=['qfc', 'experiments'],
    py_modules=['qfc_sim', 'parse_args'],
    name='slowlight_qfc',
    version='0.0.1',
    description='Frequency conversion of single-photon wave packets in '
                'slow-light atomic media',
    install_requires=[
        'pathos',
        'numpy',
        'scipy',
        'pandas>=1.5',
        'pyyaml'
    ],
    extras_require={'test': ['pytest']},
)
