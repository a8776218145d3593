#ifndef G4CSGSOLID_HH
#define G4CSGSOLID_HH

#include "G4VSolid.hh"

class G4CSGSolid : public G4VSolid
{
  public:
    G4CSGSolid(const G4String& pName);
    ~G4CSGSolid() override;

    std::ostream& StreamInfo(std::ostream& os) const;

  protected:
    G4double fRebuildPolyhedron = false;
};

#endif
