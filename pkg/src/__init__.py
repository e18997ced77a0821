# MTC-Engine source package initialization
