from setuptools import find_packages, setup

setup(
    name='theta-torsion-lab',
    packages=find_packages(),
    install_requires=["numpy", "scipy", "pandas", "tqdm"],
)
